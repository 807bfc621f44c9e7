# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Búsqueda Brøndsted–Rockafellar restringida: dado z ∈ T^ε, hallar
(x̄, x̄*) ∈ T con ‖x − x̄‖ < λ y ‖x* − x̄*‖ < ε̃/λ.

Estrategias:
- prox: paso resolvente ū = argmin f(u) − ⟨x*, u⟩ + (α/2)‖u − x‖², α = 2ε/λ²,
  y x̄* = x* − α(ū − x). Garantiza ‖ū − x‖ ≤ λ y ‖x* − x̄*‖ ≤ 2ε/λ.
- grid_scan: recorrido exhaustivo del grafo muestreado minimizando
  max(primal/λ, dual·λ/ε̃).
Se ejecutan ambas y gana la mejor (prox en empates).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from fitzkit.core.graph_sampler import membership, sample_graph
from fitzkit.core.operator_spec import Affine, OperatorSpec, SubdiffPolyhedral
from fitzkit.core.pair_space import Box, PairPoint, as_vector
from fitzkit.enlarge.enlargement import te_gap
from fitzkit.enlarge.resolvent import resolvent_step
from fitzkit.utils.errors import ConsistencyError, InputError, RefusalError
from fitzkit.utils.tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)

# Resolución por eje de la ventana por defecto alrededor de la consulta.
DEFAULT_RESOLUTION = {1: 41, 2: 9, 3: 5}


class BRStrategy(Enum):
    GRID_SCAN = "grid_scan"
    PROX = "prox"


@dataclass(frozen=True)
class BRQuery:
    x: np.ndarray
    xs: np.ndarray
    eps: float
    eps_tilde: float
    lam: float

    def __post_init__(self):
        x, xs = as_vector(self.x, "x"), as_vector(self.xs, "x*")
        if x.size != xs.size:
            raise InputError("x y x* de la consulta tienen dimensiones distintas")
        if self.eps < 0:
            raise InputError("ε debe ser no negativo")
        if not self.eps_tilde > self.eps:
            raise InputError("Se requiere ε̃ > ε")
        if not self.lam > 0:
            raise InputError("Se requiere λ > 0")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xs", xs)

    @property
    def point(self) -> PairPoint:
        return PairPoint(self.x, self.xs)

    def score(self, primal: float, dual: float) -> float:
        return max(primal / self.lam, dual * self.lam / self.eps_tilde)

    def to_dict(self) -> dict:
        return {"x": self.x.tolist(), "xs": self.xs.tolist(), "eps": self.eps,
                "eps_tilde": self.eps_tilde, "lambda": self.lam}


@dataclass(frozen=True)
class BRResult:
    found: Optional[PairPoint]
    primal_residual: float
    dual_residual: float
    satisfied: bool
    strategy: BRStrategy

    @classmethod
    def from_point(cls, q: BRQuery, found: PairPoint, strategy: BRStrategy) -> "BRResult":
        primal = float(np.linalg.norm(q.x - found.x))
        dual = float(np.linalg.norm(q.xs - found.xs))
        satisfied = primal < q.lam and dual < q.eps_tilde / q.lam
        return cls(found, primal, dual, satisfied, strategy)

    def score(self, q: BRQuery) -> float:
        if self.found is None:
            return math.inf
        return q.score(self.primal_residual, self.dual_residual)

    def to_dict(self) -> dict:
        return {
            "found": None if self.found is None else {"x": self.found.x.tolist(), "xs": self.found.xs.tolist()},
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "satisfied": self.satisfied,
            "strategy": self.strategy.value,
        }


class BRSearch:
    @staticmethod
    def default_window(q: BRQuery) -> Box:
        n = q.x.size
        primal = 2.0 * max(1.0, q.lam)
        dual = 2.0 * max(1.0, q.eps_tilde / q.lam)
        radius = np.concatenate([np.full(n, primal), np.full(n, dual)])
        center = q.point.flat()
        return Box(center - radius, center + radius, DEFAULT_RESOLUTION.get(n, 5))

    @staticmethod
    def prox(spec: OperatorSpec, q: BRQuery) -> Optional[BRResult]:
        """Paso resolvente; None si el operador no lo admite."""
        z = q.point
        if q.eps == 0.0:
            if membership(spec, z, DEFAULT_TOLERANCES["membership"]):
                return BRResult.from_point(q, z, BRStrategy.PROX)
            return None
        if not isinstance(spec, (SubdiffPolyhedral, Affine)):
            return None
        found = resolvent_step(spec, z, 2.0 * q.eps / q.lam ** 2)
        if found is None:
            logger.warning("br_search: el paso resolvente no tiene solución aceptable")
            return None

        result = BRResult.from_point(q, found, BRStrategy.PROX)
        slack = 1.0 + 1e-9
        if result.primal_residual > q.lam * slack + 1e-12 or \
                result.dual_residual > 2.0 * q.eps / q.lam * slack + 1e-12:
            raise ConsistencyError(
                f"El paso resolvente viola sus cotas: primal {result.primal_residual:.6g}, "
                f"dual {result.dual_residual:.6g}"
            )
        return result

    @staticmethod
    def grid_scan(spec: OperatorSpec, q: BRQuery, window: Box) -> Optional[BRResult]:
        try:
            sample = sample_graph(spec, window)
        except InputError:
            logger.info("br_search: el grafo no corta la ventana %s", window)
            return None
        best: Optional[BRResult] = None
        for p in sample.points:
            candidate = BRResult.from_point(q, p, BRStrategy.GRID_SCAN)
            if best is None or candidate.score(q) < best.score(q):
                best = candidate
        return best

    @staticmethod
    def _better(a: Optional[BRResult], b: Optional[BRResult], q: BRQuery) -> Optional[BRResult]:
        """`a` gana en empate."""
        if b is None:
            return a
        if a is None:
            return b
        if a.satisfied != b.satisfied:
            return a if a.satisfied else b
        return a if a.score(q) <= b.score(q) else b

    @staticmethod
    def br_search(spec: OperatorSpec, q: BRQuery, window: Optional[Box] = None) -> BRResult:
        """
        Raises:
            RefusalError: si (x, x*) no está en T^ε.
        """
        if q.x.size != spec.dim:
            raise InputError(f"Consulta de dimensión {q.x.size} para un operador en R^{spec.dim}")
        window = window or BRSearch.default_window(q)
        gap = te_gap(spec, q.point, window)
        if gap.value < -(q.eps * (1.0 + 1e-9) + 1e-12):
            raise RefusalError(f"La consulta no está en T^ε: ínfimo {gap.value:.6g} < −{q.eps}")

        prox = BRSearch.prox(spec, q)
        scan = BRSearch.grid_scan(spec, q, window)
        result = BRSearch._better(prox, scan, q)
        if result is None:
            return BRResult(None, math.inf, math.inf, False, BRStrategy.GRID_SCAN)
        if not membership(spec, result.found, DEFAULT_TOLERANCES["membership"]):
            raise ConsistencyError(f"El punto hallado {result.found} no está en el grafo")
        logger.debug("br_search: %s con residuos %.3g / %.3g", result.strategy.value,
                     result.primal_residual, result.dual_residual)
        return result


def br_search(spec: OperatorSpec, q: BRQuery, window: Optional[Box] = None) -> BRResult:
    return BRSearch.br_search(spec, q, window)
