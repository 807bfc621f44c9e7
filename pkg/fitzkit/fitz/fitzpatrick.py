# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Función de Fitzpatrick φ_T y función S_T.

- `phi_of(g)`: φ_g(x, x*) = max_{(y, y*) ∈ g} ⟨x, y*⟩ + ⟨y, x*⟩ − ⟨y, y*⟩, en forma MaxAffine.
- `s_of(g)`: S_g = cl conv(π + δ_g), en forma HullFunc.
- `ExactFitzpatrick.for_spec(spec)`: φ_T en forma cerrada para los operadores
  en los que se conoce (afín, ∂f en R, afín restringido en R, inversas).
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from fitzkit.convexfn.conjugation import clconv_from_points
from fitzkit.convexfn.representations import HullFunc, MaxAffine, evaluate
from fitzkit.core.operator_spec import (
    Affine,
    FiniteGraph,
    Inverse,
    OperatorSpec,
    Restricted,
    SubdiffPolyhedral,
)
from fitzkit.core.pair_space import Box, PairPoint, duality
from fitzkit.utils.counters import count_evaluations
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)

PhiFunction = Callable[[PairPoint], float]

# Autovalores de la parte simétrica por debajo de NULL_TOL·escala se consideran nulos.
NULL_TOL = 1e-12
RANGE_TOL = 1e-10


def phi_of(g: FiniteGraph) -> MaxAffine:
    if not isinstance(g, FiniteGraph) or len(g) == 0:
        raise InputError("phi_of requiere un grafo finito no vacío")
    y, ys = g.arrays()
    return MaxAffine.from_pair_terms(ys, y, -np.einsum("ij,ij->i", y, ys))


def s_of(g: FiniteGraph) -> HullFunc:
    if not isinstance(g, FiniteGraph) or len(g) == 0:
        raise InputError("s_of requiere un grafo finito no vacío")
    return clconv_from_points([(p, duality(p)) for p in g.points])


def upper_envelope(slopes: np.ndarray, offsets: np.ndarray) -> List[Tuple[float, float]]:
    """
    Piezas (c, d) de max_i c_i x + d_i que son máximas en un intervalo no
    trivial, ordenadas por pendiente creciente.

    Equivale a la envolvente cóncava superior de los puntos (c_i, d_i);
    los puntos colineales se descartan.
    """
    best = {}
    for c, d in zip(slopes.tolist(), offsets.tolist()):
        if c not in best or d > best[c]:
            best[c] = d
    hull: List[Tuple[float, float]] = []
    for c, d in sorted(best.items()):
        while len(hull) >= 2:
            (c1, d1), (c2, d2) = hull[-2], hull[-1]
            # (c2, d2) bajo o sobre el segmento (c1, d1)-(c, d): no es máxima en ningún intervalo
            if (d2 - d1) * (c - c1) <= (d - d1) * (c2 - c1):
                hull.pop()
            else:
                break
        hull.append((c, d))
    return hull


class ExactFitzpatrick:
    @staticmethod
    def affine(spec: Affine) -> PhiFunction:
        """
        φ(x, x*) = ⟨x, b⟩ + sup_y ⟨y, q⟩ − ⟨y, S y⟩ con q = Mᵀx + x* − b y
        S la parte simétrica de M: ¼ qᵀS⁺q si q ∈ im S, +inf si no.
        """
        eig, vecs = np.linalg.eigh(spec.symmetric_part)
        scale = max(1.0, float(np.abs(eig).max()))
        null = eig <= NULL_TOL * scale
        negative = bool(np.any(eig < -NULL_TOL * scale))

        def phi(z: PairPoint) -> float:
            count_evaluations()
            if negative:
                return math.inf
            q = spec.m.T @ z.x + z.xs - spec.b
            coeff = vecs.T @ q
            if np.any(np.abs(coeff[null]) > RANGE_TOL * (1.0 + float(np.linalg.norm(q)))):
                return math.inf
            live = ~null
            return float(z.x @ spec.b + 0.25 * np.sum(coeff[live] ** 2 / eig[live]))

        return phi

    @staticmethod
    def subdiff_1d(spec: SubdiffPolyhedral) -> PhiFunction:
        """
        Máximo del funcional lineal sobre los vértices del grafo de ∂f; +inf
        si x* sale de la franja de pendientes [c_min, c_max].
        """
        pieces = upper_envelope(spec.slopes[:, 0], spec.offsets)
        if len(pieces) == 1:
            c = pieces[0][0]

            def phi_single(z: PairPoint) -> float:
                count_evaluations()
                return float(z.x[0] * c) if z.xs[0] == c else math.inf

            return phi_single

        vertices = []
        for (c1, d1), (c2, d2) in zip(pieces, pieces[1:]):
            k = (d1 - d2) / (c2 - c1)
            vertices.extend([(k, c1), (k, c2)])
        v = np.array(vertices)
        c_min, c_max = pieces[0][0], pieces[-1][0]

        def phi(z: PairPoint) -> float:
            count_evaluations()
            x, xs = float(z.x[0]), float(z.xs[0])
            if xs < c_min or xs > c_max:
                return math.inf
            return float(np.max(x * v[:, 1] + v[:, 0] * xs - v[:, 0] * v[:, 1]))

        return phi

    @staticmethod
    def _restricted_interval(spec: Restricted) -> Optional[Tuple[float, float]]:
        inner: Affine = spec.inner
        m, b = float(inner.m[0, 0]), float(inner.b[0])
        window: Box = spec.window
        lo, hi = float(window.lower[0]), float(window.upper[0])
        if window.dim == 2:
            ylo, yhi = float(window.lower[1]), float(window.upper[1])
            if m == 0.0:
                if not ylo <= b <= yhi:
                    return None
            else:
                a1, a2 = sorted(((ylo - b) / m, (yhi - b) / m))
                lo, hi = max(lo, a1), min(hi, a2)
        return (lo, hi) if lo <= hi else None

    @staticmethod
    def restricted_affine_1d(spec: Restricted) -> PhiFunction:
        """
        sup_{y ∈ I} −m y² + y (m x + x* − b) + x b sobre el intervalo I de la
        restricción; cóncavo si m > 0.
        """
        m, b = float(spec.inner.m[0, 0]), float(spec.inner.b[0])
        interval = ExactFitzpatrick._restricted_interval(spec)
        if interval is None:
            raise InputError("La restricción deja el grafo vacío")
        lo, hi = interval

        def phi(z: PairPoint) -> float:
            count_evaluations()
            x, xs = float(z.x[0]), float(z.xs[0])
            lin = m * x + xs - b
            candidates = [lo, hi]
            if m > 0:
                candidates.append(min(hi, max(lo, lin / (2.0 * m))))
            return max(-m * y * y + y * lin + x * b for y in candidates)

        return phi

    @staticmethod
    def for_spec(spec: OperatorSpec) -> Optional[PhiFunction]:
        """φ_T exacta o None si el operador no tiene camino cerrado."""
        if isinstance(spec, FiniteGraph):
            rep = phi_of(spec)
            return lambda z: evaluate(rep, z)
        if isinstance(spec, Affine):
            return ExactFitzpatrick.affine(spec)
        if isinstance(spec, SubdiffPolyhedral) and spec.dim == 1:
            return ExactFitzpatrick.subdiff_1d(spec)
        if isinstance(spec, Restricted) and isinstance(spec.inner, Affine) and spec.dim == 1:
            return ExactFitzpatrick.restricted_affine_1d(spec)
        if isinstance(spec, Inverse):
            inner = ExactFitzpatrick.for_spec(spec.inner)
            if inner is None:
                return None
            return lambda z: inner(z.swapped())
        logger.debug("sin φ cerrada para %s", type(spec).__name__)
        return None


def exact_phi(spec: OperatorSpec) -> Optional[PhiFunction]:
    return ExactFitzpatrick.for_spec(spec)
