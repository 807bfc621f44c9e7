# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

# Tolerancias por defecto de cada familia de operaciones.
DEFAULT_TOLERANCES = {
    "lp": 1e-8,
    "grid": 1e-6,
    "membership": 1e-9,
    "sampling": 1e-12,
    "polar_consistency": 1e-9,
}

# Parámetros del LP denso (simplex de dos fases, regla de Bland).
LP_LIMITS = {
    "max_rows": 64,
    "max_variables": 4096,
    "pivot_eps": 1e-11,
    "feasibility": 1e-9,
}

# Búsqueda multistart por defecto (penalización del certificado polar).
MULTISTART_DEFAULTS = {
    "starts": 64,
    "max_iterations": 2000,
    "step_tolerance": 1e-9,
    "penalty": 1e3,
}

# Cota de dimensión para las suites exhaustivas.
MAX_SUITE_DIMENSION = 3
