# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Jerarquía de errores de fitzkit.

El código de librería lanza estas excepciones; solo `fitzkit.cli` las
convierte en códigos de salida (ver `EXIT_CODES`).
"""


class FitzkitError(Exception):
    """Error base de fitzkit."""


class InputError(FitzkitError, ValueError):
    """Entrada inválida: dimensiones, grafo vacío, esquema o caso no soportado."""


class RefusalError(InputError):
    """La precondición de una operación no se pudo establecer."""


class SolverError(FitzkitError, RuntimeError):
    """Fallo de un solver numérico (LP, ciclado, iteraciones agotadas)."""


class ConsistencyError(FitzkitError, AssertionError):
    """Dos caminos de cálculo independientes no coinciden (trampa de bugs)."""


EXIT_CODES = {
    "pass": 0,
    "violation": 1,
    "input": 2,
    "solver": 3,
}


def exit_code_for(error: Exception) -> int:
    """Traduce una excepción al contrato de códigos de salida del CLI."""
    if isinstance(error, InputError):
        return EXIT_CODES["input"]
    if isinstance(error, (SolverError, ConsistencyError)):
        return EXIT_CODES["solver"]
    raise error
