# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Programación lineal densa de escala de escritorio.

Resuelve
    min  c·x   s.a.  A x = b,  x >= lb
con un simplex tabular de dos fases y regla de Bland (pivoteo determinista,
sin ciclado). La solución básica final se re-resuelve contra la matriz
original para que los residuos de factibilidad queden en precisión de máquina.

Lo usan `convexfn` (evaluación de HullFunc, conjugadas exactas) y, a través
de ellas, `polar` y `fitz`.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from fitzkit.utils.counters import count_lp_call
from fitzkit.utils.errors import InputError, SolverError
from fitzkit.utils.tolerances import LP_LIMITS

logger = logging.getLogger(__name__)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPProblem:
    objective: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    lower: Optional[np.ndarray] = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).ravel()
        a = np.atleast_2d(np.asarray(self.a_eq, dtype=float))
        b = np.asarray(self.b_eq, dtype=float).ravel()
        lower = np.zeros(c.size) if self.lower is None else np.asarray(self.lower, dtype=float).ravel()

        if a.shape != (b.size, c.size):
            raise InputError(
                f"Dimensiones inconsistentes del LP: A {a.shape}, b {b.size}, c {c.size}"
            )
        if lower.size != c.size:
            raise InputError("El vector de cotas inferiores no coincide con el número de variables")
        if b.size > LP_LIMITS["max_rows"] or c.size > LP_LIMITS["max_variables"]:
            raise InputError(
                f"LP fuera de escala: {b.size} filas, {c.size} variables "
                f"(máximo {LP_LIMITS['max_rows']} x {LP_LIMITS['max_variables']})"
            )
        for name, arr in (("c", c), ("A", a), ("b", b), ("lb", lower)):
            if not np.all(np.isfinite(arr)):
                raise InputError(f"El LP contiene valores no finitos en {name}")

        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "a_eq", a)
        object.__setattr__(self, "b_eq", b)
        object.__setattr__(self, "lower", lower)

    @property
    def n_rows(self) -> int:
        return self.b_eq.size

    @property
    def n_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: float
    solution: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


@dataclass
class _Tableau:
    table: np.ndarray
    basis: List[int]
    iterations: int = 0
    dropped_rows: List[int] = field(default_factory=list)


class SimplexSolver:
    """Simplex denso de dos fases con regla de Bland."""

    @staticmethod
    def _pivot(tab: _Tableau, row: int, col: int) -> None:
        t = tab.table
        t[row] /= t[row, col]
        for i in range(t.shape[0]):
            if i != row and t[i, col] != 0.0:
                t[i] -= t[i, col] * t[row]
        tab.basis[row] = col
        tab.iterations += 1

    @staticmethod
    def _iterate(tab: _Tableau, n_allowed: int, max_iterations: int) -> LPStatus:
        """Itera hasta optimalidad; la última fila guarda los costos reducidos."""
        eps = LP_LIMITS["pivot_eps"]
        t = tab.table
        n_rows = t.shape[0] - 1
        while True:
            if tab.iterations > max_iterations:
                raise SolverError(f"Guardia anti-ciclado superada ({max_iterations} pivotes)")

            reduced = t[-1, :n_allowed]
            candidates = np.flatnonzero(reduced < -eps)
            if candidates.size == 0:
                return LPStatus.OPTIMAL
            col = int(candidates[0])

            column = t[:n_rows, col]
            rows = np.flatnonzero(column > eps)
            if rows.size == 0:
                return LPStatus.UNBOUNDED

            ratios = t[rows, -1] / column[rows]
            best = ratios.min()
            tied = rows[ratios <= best + eps * max(1.0, abs(best))]
            row = int(min(tied, key=lambda r: tab.basis[r]))
            SimplexSolver._pivot(tab, row, col)

    @staticmethod
    def solve_lp(problem: LPProblem) -> LPResult:
        """
        Resuelve el LP en forma estándar con cotas inferiores.

        Returns:
            LPResult con estado optimal | infeasible | unbounded. Para
            infeasible el valor es +inf; para unbounded, -inf.

        Raises:
            SolverError: guardia de ciclado superada o residuo de factibilidad
                mayor que 1e-9 tras el re-solve final.
        """
        count_lp_call()
        c, a, b, lower = problem.objective, problem.a_eq, problem.b_eq, problem.lower
        m, n = a.shape
        max_iterations = 50 * (m + n) + 100

        # Desplazamiento x = y + lb y filas con lado derecho no negativo.
        rhs = b - a @ lower
        sign = np.where(rhs < 0.0, -1.0, 1.0)
        a1 = a * sign[:, None]
        b1 = rhs * sign

        table = np.zeros((m + 1, n + m + 1))
        table[:m, :n] = a1
        table[:m, n:n + m] = np.eye(m)
        table[:m, -1] = b1
        table[m, :n] = -a1.sum(axis=0)
        table[m, -1] = -b1.sum()
        tab = _Tableau(table=table, basis=list(range(n, n + m)))

        # Fase 1: minimizar la suma de artificiales.
        SimplexSolver._iterate(tab, n + m, max_iterations)
        infeasibility = -tab.table[m, -1]
        if infeasibility > LP_LIMITS["feasibility"] * max(1.0, float(np.abs(b1).max(initial=0.0))):
            logger.debug("LP infactible (fase 1 = %.3e)", infeasibility)
            return LPResult(LPStatus.INFEASIBLE, float("inf"), None, tab.iterations)

        # Sacar artificiales de la base; las filas sin pivote son redundantes.
        eps = LP_LIMITS["pivot_eps"]
        keep = []
        for row in range(m):
            if tab.basis[row] >= n:
                nonzero = np.flatnonzero(np.abs(tab.table[row, :n]) > eps)
                if nonzero.size:
                    SimplexSolver._pivot(tab, row, int(nonzero[0]))
                    keep.append(row)
                else:
                    tab.dropped_rows.append(row)
            else:
                keep.append(row)

        # Fase 2 sobre las columnas originales.
        t2 = np.zeros((len(keep) + 1, n + 1))
        t2[:-1, :n] = tab.table[keep, :n]
        t2[:-1, -1] = tab.table[keep, -1]
        t2[-1, :n] = c
        basis = [tab.basis[r] for r in keep]
        for i, col in enumerate(basis):
            t2[-1] -= c[col] * t2[i]
        phase2 = _Tableau(table=t2, basis=basis, iterations=tab.iterations)
        status = SimplexSolver._iterate(phase2, n, max_iterations)
        if status is LPStatus.UNBOUNDED:
            return LPResult(LPStatus.UNBOUNDED, float("-inf"), None, phase2.iterations)

        y = SimplexSolver._polish(a1, b1, keep, phase2)
        x = y + lower
        residual = float(np.abs(a @ x - b).max(initial=0.0))
        if residual > LP_LIMITS["feasibility"] * max(1.0, float(np.abs(b).max(initial=0.0))):
            raise SolverError(f"Residuo de factibilidad {residual:.3e} tras el re-solve")
        return LPResult(LPStatus.OPTIMAL, float(c @ x), x, phase2.iterations)

    @staticmethod
    def _polish(a1: np.ndarray, b1: np.ndarray, keep: List[int], tab: _Tableau) -> np.ndarray:
        """Recalcula la solución básica resolviendo B y_B = b contra A original."""
        n = a1.shape[1]
        y = np.zeros(n)
        basis = tab.basis
        for i, col in enumerate(basis):
            y[col] = tab.table[i, -1]
        if basis:
            try:
                y_b = np.linalg.solve(a1[np.ix_(keep, basis)], b1[keep])
                y[basis] = y_b
            except np.linalg.LinAlgError:
                logger.debug("base singular en el re-solve; se conserva el tableau")
        negative = y < 0.0
        if np.any(y[negative] < -LP_LIMITS["feasibility"]):
            raise SolverError("El re-solve produjo una solución no factible (x < 0)")
        y[negative] = 0.0
        return y


def solve_lp(problem: LPProblem) -> LPResult:
    return SimplexSolver.solve_lp(problem)
