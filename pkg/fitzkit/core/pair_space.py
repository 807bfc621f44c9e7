# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Espacio producto R^n x R^n: vectores, puntos par (x, x*), el producto de
dualidad π y las ventanas de evaluación (Box).

Modelo finito-dimensional: X = X* = X** = R^n con el producto interno
estándar como dualidad.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from fitzkit.utils.errors import InputError

VectorLike = Union[Sequence[float], np.ndarray, float]


def as_vector(values: VectorLike, name: str = "vector") -> np.ndarray:
    """Convierte a vector float64 de solo lectura y valida que sea finito."""
    arr = np.atleast_1d(np.asarray(values, dtype=float)).ravel().copy()
    if arr.size == 0:
        raise InputError(f"{name} vacío")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contiene NaN o infinito: {arr.tolist()}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PairPoint:
    x: np.ndarray
    xs: np.ndarray

    def __post_init__(self):
        x = as_vector(self.x, "x")
        xs = as_vector(self.xs, "x*")
        if x.size != xs.size:
            raise InputError(f"Dimensiones distintas en el punto par: {x.size} vs {xs.size}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xs", xs)

    @classmethod
    def from_flat(cls, z: VectorLike) -> "PairPoint":
        arr = as_vector(z, "z")
        if arr.size % 2:
            raise InputError(f"Un punto par necesita longitud par, se recibió {arr.size}")
        n = arr.size // 2
        return cls(arr[:n], arr[n:])

    @property
    def dim(self) -> int:
        return self.x.size

    def flat(self) -> np.ndarray:
        return np.concatenate([self.x, self.xs])

    def swapped(self) -> "PairPoint":
        return PairPoint(self.xs, self.x)

    def as_lists(self) -> Tuple[list, list]:
        return self.x.tolist(), self.xs.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairPoint):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.xs, other.xs)

    def __hash__(self) -> int:
        return hash((self.x.tobytes(), self.xs.tobytes()))

    def __repr__(self) -> str:
        return f"PairPoint(x={self.x.tolist()}, xs={self.xs.tolist()})"


def duality(p: PairPoint) -> float:
    """Producto de dualidad π(x, x*) = Σ x_i x*_i."""
    if p.x.size != p.xs.size:
        raise InputError("Dimensiones distintas en el producto de dualidad")
    return float(np.dot(p.x, p.xs))


def monotone_product(p: PairPoint, q: PairPoint) -> float:
    """⟨p.x − q.x, p.xs − q.xs⟩."""
    if p.dim != q.dim:
        raise InputError(f"Dimensiones distintas: {p.dim} vs {q.dim}")
    return float(np.dot(p.x - q.x, p.xs - q.xs))


def mu_related(p: PairPoint, q: PairPoint) -> bool:
    """Relación monótona: ⟨p.x − q.x, p.xs − q.xs⟩ >= 0, sin tolerancia."""
    return monotone_product(p, q) >= 0.0


@dataclass(frozen=True, eq=False)
class Box:
    """Ventana acotada con una grilla regular por eje."""

    lower: np.ndarray
    upper: np.ndarray
    resolution: Tuple[int, ...]

    def __post_init__(self):
        lower = as_vector(self.lower, "lower")
        upper = as_vector(self.upper, "upper")
        if lower.size != upper.size:
            raise InputError("lower y upper de la ventana tienen dimensiones distintas")
        if np.any(lower >= upper):
            raise InputError(f"La ventana requiere lower < upper: {lower.tolist()} / {upper.tolist()}")
        res = np.atleast_1d(np.asarray(self.resolution)).astype(int).ravel()
        if res.size == 1:
            res = np.repeat(res, lower.size)
        if res.size != lower.size:
            raise InputError("La resolución debe tener un entero por eje")
        if np.any(res < 2):
            raise InputError("La resolución de la ventana debe ser >= 2 en cada eje")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "resolution", tuple(int(r) for r in res))

    @classmethod
    def cube(cls, dim: int, lower: float, upper: float, resolution: int) -> "Box":
        return cls(np.full(dim, float(lower)), np.full(dim, float(upper)), (resolution,) * dim)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def steps(self) -> np.ndarray:
        return (self.upper - self.lower) / (np.asarray(self.resolution) - 1)

    def axes(self) -> list:
        return [np.linspace(lo, hi, r) for lo, hi, r in zip(self.lower, self.upper, self.resolution)]

    def grid(self) -> np.ndarray:
        """Nodos de la grilla, uno por fila, en orden lexicográfico (indexing='ij')."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack(mesh, axis=-1).reshape(-1, self.dim)

    def contains(self, v: VectorLike, tol: float = 0.0) -> bool:
        arr = np.atleast_1d(np.asarray(v, dtype=float))
        return bool(np.all(arr >= self.lower - tol) and np.all(arr <= self.upper + tol))

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        return np.all((rows >= self.lower) & (rows <= self.upper), axis=1)

    def _half(self, first: bool) -> "Box":
        if self.dim % 2:
            raise InputError("Solo una ventana de pares (dimensión 2n) tiene mitades primal/dual")
        n = self.dim // 2
        sl = slice(0, n) if first else slice(n, None)
        return Box(self.lower[sl], self.upper[sl], self.resolution[sl])

    def primal(self) -> "Box":
        return self._half(True)

    def dual(self) -> "Box":
        return self._half(False)

    def swapped(self) -> "Box":
        """Intercambia los bloques primal y dual de una ventana de pares."""
        p, d = self.primal(), self.dual()
        return Box(
            np.concatenate([d.lower, p.lower]),
            np.concatenate([d.upper, p.upper]),
            d.resolution + p.resolution,
        )

    def to_dict(self) -> dict:
        return {
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
            "resolution": list(self.resolution),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Box":
        try:
            return cls(data["lower"], data["upper"], tuple(np.atleast_1d(data["resolution"]).tolist()))
        except KeyError as e:
            raise InputError(f"Ventana sin el campo {e}") from e

    def __eq__(self, other) -> bool:
        if not isinstance(other, Box):
            return NotImplemented
        return (
            np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
            and self.resolution == other.resolution
        )

    def __hash__(self) -> int:
        return hash((self.lower.tobytes(), self.upper.tobytes(), self.resolution))

    def __repr__(self) -> str:
        return f"Box(lower={self.lower.tolist()}, upper={self.upper.tolist()}, resolution={self.resolution})"
