# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Representaciones de funciones convexas de valor real extendido en R^k
(k = 2n cuando la función vive en el espacio de pares).

- MaxAffine: value(z) = max_i ⟨a_i, z⟩ + c_i.
- HullFunc:  value(z) = min { Σ λ_i v_i : Σ λ_i z_i = z, λ ∈ símplex },
             +inf fuera de conv{z_i} (valor exacto vía LP).
- GridFunc:  valores en los nodos de una grilla; se evalúa en el nodo más cercano.

El infinito se representa con `math.inf`, nunca con un número centinela.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.optim.simplex_solver import LPProblem, LPStatus, solve_lp
from fitzkit.utils.counters import count_evaluations
from fitzkit.utils.errors import InputError, SolverError

logger = logging.getLogger(__name__)


def flat_point(z, dim: int) -> np.ndarray:
    arr = z.flat() if isinstance(z, PairPoint) else np.atleast_1d(np.asarray(z, dtype=float)).ravel()
    if arr.size != dim:
        raise InputError(f"Punto de dimensión {arr.size}, la función vive en R^{dim}")
    return arr


def encode_extended(value: float):
    """Real extendido → JSON: número si es finito, '+inf'/'-inf' si no."""
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return float(value)


def decode_extended(value) -> float:
    if isinstance(value, str):
        if value in ("+inf", "inf"):
            return math.inf
        if value == "-inf":
            return -math.inf
        raise InputError(f"Real extendido inválido: {value!r}")
    return float(value)


@dataclass(frozen=True, eq=False)
class MaxAffine:
    coefficients: np.ndarray
    constants: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.coefficients, dtype=float)).copy()
        c = np.atleast_1d(np.asarray(self.constants, dtype=float)).ravel().copy()
        if a.shape[0] == 0:
            raise InputError("MaxAffine requiere al menos un término")
        if a.shape[0] != c.size:
            raise InputError("MaxAffine: número distinto de coeficientes y constantes")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(c))):
            raise InputError("MaxAffine con valores no finitos")
        a.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", a)
        object.__setattr__(self, "constants", c)

    @classmethod
    def from_pair_terms(cls, u: np.ndarray, us: np.ndarray, c: np.ndarray) -> "MaxAffine":
        """Términos ⟨u_i, x⟩ + ⟨us_i, x*⟩ + c_i."""
        return cls(np.hstack([np.atleast_2d(u), np.atleast_2d(us)]), c)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[1]

    def eval_rows(self, rows: np.ndarray) -> np.ndarray:
        count_evaluations(len(rows))
        return (np.asarray(rows, dtype=float) @ self.coefficients.T + self.constants).max(axis=1)

    def to_payload(self) -> dict:
        return {
            "kind": "max_affine",
            "coefficients": self.coefficients.tolist(),
            "constants": self.constants.tolist(),
        }


@dataclass(frozen=True, eq=False)
class HullFunc:
    generators: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=float)).copy()
        v = np.atleast_1d(np.asarray(self.values, dtype=float)).ravel().copy()
        if g.shape[0] == 0:
            raise InputError("HullFunc requiere al menos un generador")
        if g.shape[0] != v.size:
            raise InputError("HullFunc: número distinto de generadores y valores")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(v))):
            raise InputError("HullFunc con valores no finitos")
        g.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "generators", g)
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.generators.shape[1]

    def eval_flat(self, z: np.ndarray) -> float:
        count_evaluations()
        g = self.generators
        # Fuera de la caja envolvente ya se sabe que es +inf.
        slack = 1e-9 * max(1.0, float(np.abs(g).max()))
        if np.any(z < g.min(axis=0) - slack) or np.any(z > g.max(axis=0) + slack):
            return math.inf
        m, k = g.shape
        problem = LPProblem(
            objective=self.values,
            a_eq=np.vstack([g.T, np.ones((1, m))]),
            b_eq=np.concatenate([z, [1.0]]),
        )
        result = solve_lp(problem)
        if result.status is LPStatus.INFEASIBLE:
            return math.inf
        if result.status is not LPStatus.OPTIMAL:
            raise SolverError(f"LP de HullFunc terminó con estado {result.status.value}")
        return result.value

    def eval_rows(self, rows: np.ndarray) -> np.ndarray:
        return np.array([self.eval_flat(r) for r in np.asarray(rows, dtype=float)])

    def to_payload(self) -> dict:
        return {
            "kind": "hull",
            "generators": self.generators.tolist(),
            "values": self.values.tolist(),
        }


@dataclass(frozen=True, eq=False)
class GridFunc:
    box: Box
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if v.shape != self.box.resolution:
            v = v.reshape(self.box.resolution)
        if np.any(np.isnan(v)):
            raise InputError("GridFunc no admite NaN")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, box: Box, fn: Callable[[np.ndarray], float]) -> "GridFunc":
        nodes = box.grid()
        return cls(box, np.array([fn(z) for z in nodes]).reshape(box.resolution))

    @property
    def dim(self) -> int:
        return self.box.dim

    def nearest_node(self, z: np.ndarray) -> Tuple[Tuple[int, ...], np.ndarray, float]:
        """(índice, coordenadas, valor) del nodo más cercano a z."""
        steps = self.box.steps
        idx = np.rint((np.asarray(z, dtype=float) - self.box.lower) / steps).astype(int)
        idx = np.clip(idx, 0, np.asarray(self.box.resolution) - 1)
        coords = self.box.lower + idx * steps
        index = tuple(int(i) for i in idx)
        return index, coords, float(self.values[index])

    def eval_flat(self, z: np.ndarray) -> float:
        count_evaluations()
        index, coords, value = self.nearest_node(z)
        logger.debug("GridFunc: nodo %s en %s", index, coords.tolist())
        return value

    def eval_rows(self, rows: np.ndarray) -> np.ndarray:
        return np.array([self.eval_flat(r) for r in np.asarray(rows, dtype=float)])

    def to_payload(self) -> dict:
        return {
            "kind": "grid",
            "box": self.box.to_dict(),
            "values": [encode_extended(v) for v in self.values.ravel()],
        }


ConvexFuncRep = Union[MaxAffine, HullFunc, GridFunc]
Evaluable = Union[ConvexFuncRep, Callable[[PairPoint], float]]


def evaluate(f: ConvexFuncRep, z) -> float:
    """Evalúa una representación en un punto (PairPoint o vector plano)."""
    if isinstance(f, MaxAffine):
        return float(f.eval_rows(flat_point(z, f.dim)[None, :])[0])
    if isinstance(f, (HullFunc, GridFunc)):
        return f.eval_flat(flat_point(z, f.dim))
    raise InputError(f"Representación desconocida: {type(f).__name__}")


def evaluate_any(h: Evaluable, z: PairPoint) -> float:
    """Como `evaluate`, pero acepta también funciones puntuales arbitrarias."""
    if isinstance(h, (MaxAffine, HullFunc, GridFunc)):
        return evaluate(h, z)
    if callable(h):
        count_evaluations()
        return float(h(z))
    raise InputError(f"No se puede evaluar un objeto de tipo {type(h).__name__}")


def representation_from_payload(data: dict) -> ConvexFuncRep:
    kind = data.get("kind")
    if kind == "max_affine":
        return MaxAffine(data["coefficients"], data["constants"])
    if kind == "hull":
        return HullFunc(data["generators"], data["values"])
    if kind == "grid":
        box = Box.from_dict(data["box"])
        return GridFunc(box, np.array([decode_extended(v) for v in data["values"]]))
    raise InputError(f"Tipo de representación desconocido: {kind!r}")
