# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Muestreo determinista del grafo de un operador y test de pertenencia.

Ventanas: una Box de dimensión n es una ventana primal (se muestrea x);
una de dimensión 2n es una ventana de pares (ejes x primero, luego x*) y
además se descartan los puntos con x* fuera de la mitad dual.
"""

import logging
from typing import List

import numpy as np

from fitzkit.convexfn.conjugation import conjugate
from fitzkit.convexfn.representations import MaxAffine, evaluate
from fitzkit.core.operator_spec import (
    Affine,
    FiniteGraph,
    Inverse,
    OperatorSpec,
    Restricted,
    SubdiffPolyhedral,
)
from fitzkit.core.pair_space import Box, PairPoint, duality
from fitzkit.utils.errors import InputError
from fitzkit.utils.tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)

ACTIVE_TOL = 1e-12


class GraphSampler:
    @staticmethod
    def _split_window(spec: OperatorSpec, window: Box):
        """(ventana primal, ventana dual o None) según la dimensión de la Box."""
        n = spec.dim
        if window.dim == n:
            return window, None
        if window.dim == 2 * n:
            return window.primal(), window.dual()
        raise InputError(f"Ventana de dimensión {window.dim} para un operador en R^{n}")

    @staticmethod
    def pair_window(dim: int, window: Box) -> Box:
        """Ventana de pares; una ventana primal W se duplica como W x W."""
        if window.dim == 2 * dim:
            return window
        if window.dim != dim:
            raise InputError(f"Ventana de dimensión {window.dim} para un operador en R^{dim}")
        return Box(
            np.concatenate([window.lower, window.lower]),
            np.concatenate([window.upper, window.upper]),
            window.resolution + window.resolution,
        )

    @staticmethod
    def _sorted_unique(points: List[PairPoint]) -> List[PairPoint]:
        seen = {}
        for p in points:
            seen.setdefault(p, p)
        return sorted(seen.values(), key=lambda p: tuple(p.flat().tolist()))

    @staticmethod
    def _kinks_1d(spec: SubdiffPolyhedral, primal: Box) -> List[float]:
        """Puntos de quiebre de la envolvente superior dentro de la ventana (n = 1)."""
        c, d = spec.slopes[:, 0], spec.offsets
        kinks = []
        for i in range(c.size):
            for j in range(i + 1, c.size):
                if c[i] == c[j]:
                    continue
                x = (d[j] - d[i]) / (c[i] - c[j])
                if not primal.contains([x]):
                    continue
                fx = spec.value(np.array([x]))
                if c[i] * x + d[i] >= fx - ACTIVE_TOL * max(1.0, abs(fx)):
                    kinks.append(float(x))
        return sorted(set(kinks))

    @staticmethod
    def _subdiff_points(spec: SubdiffPolyhedral, x: np.ndarray, tol: float) -> List[PairPoint]:
        values = spec.values(x)
        fx = float(values.max())
        active = np.flatnonzero(values >= fx - ACTIVE_TOL * max(1.0, abs(fx)))
        slopes = np.unique(spec.slopes[active], axis=0)
        best = np.array([
            values[active][np.all(spec.slopes[active] == s, axis=1)].max() for s in slopes
        ])
        limit = tol * max(1.0, abs(fx))
        out = []
        # f(x) − Σ λ_i (⟨c_i, x⟩ + d_i) acota la brecha de Fenchel–Young de Σ λ_i c_i
        for s, v in zip(slopes, best):
            if fx - float(v) <= limit:
                out.append(PairPoint(x, s))
        if len(slopes) >= 2 and fx - float(best.mean()) <= limit:
            out.append(PairPoint(x, slopes.mean(axis=0)))
        return out

    @staticmethod
    def _raw_sample(spec: OperatorSpec, window: Box, tol: float) -> List[PairPoint]:
        if isinstance(spec, FiniteGraph):
            if window.dim == spec.dim:
                return [p for p in spec.points if window.contains(p.x)]
            return [p for p in spec.points if window.contains(p.flat())]

        if isinstance(spec, Inverse):
            pair = GraphSampler.pair_window(spec.dim, window)
            inner = GraphSampler._raw_sample(spec.inner, pair.swapped(), tol)
            return [p.swapped() for p in inner]

        if isinstance(spec, Restricted):
            inner = GraphSampler._raw_sample(spec.inner, window, tol)
            return [p for p in inner if spec.window_contains(p)]

        primal, dual = GraphSampler._split_window(spec, window)
        xs_grid = primal.grid()
        points: List[PairPoint] = []
        if isinstance(spec, Affine):
            points = [PairPoint(x, spec.apply(x)) for x in xs_grid]
        elif isinstance(spec, SubdiffPolyhedral):
            grid = [row for row in xs_grid]
            if spec.dim == 1:
                grid += [np.array([k]) for k in GraphSampler._kinks_1d(spec, primal)]
            for x in grid:
                points.extend(GraphSampler._subdiff_points(spec, x, tol))
        else:
            raise InputError(f"Tipo de operador desconocido: {type(spec).__name__}")
        if dual is not None:
            points = [p for p in points if dual.contains(p.xs)]
        return points

    @staticmethod
    def sample_graph(spec: OperatorSpec, window: Box, tol: float = DEFAULT_TOLERANCES["sampling"]) -> FiniteGraph:
        """
        Muestra determinista del grafo intersecado con la ventana, ordenada
        lexicográficamente por (x, x*) y sin duplicados.

        Raises:
            InputError: si la intersección es vacía.
        """
        points = GraphSampler._sorted_unique(GraphSampler._raw_sample(spec, window, tol))
        if not points:
            raise InputError(f"El grafo no corta la ventana {window}")
        logger.debug("sample_graph: %d puntos de %s en %s", len(points), type(spec).__name__, window)
        return FiniteGraph(tuple(points))

    @staticmethod
    def covering_sample(spec: OperatorSpec, window: Box) -> FiniteGraph:
        """
        Muestra sobre la mitad primal de una ventana de pares sin filtrar x*.

        Cubre todos los nodos de la grilla que están en el grafo, de modo que
        el φ del muestreo coincide con π en ellos.
        """
        if window.dim == spec.dim:
            return GraphSampler.sample_graph(spec, window)
        if isinstance(spec, Inverse):
            inner = GraphSampler.covering_sample(spec.inner, window.swapped())
            return FiniteGraph(tuple(GraphSampler._sorted_unique([p.swapped() for p in inner])))
        if isinstance(spec, Restricted):
            inner = GraphSampler.covering_sample(spec.inner, window)
            points = [p for p in inner if spec.window_contains(p)]
            if not points:
                raise InputError(f"El grafo no corta la ventana {window}")
            return FiniteGraph(tuple(points))
        if isinstance(spec, FiniteGraph):
            return spec
        return GraphSampler.sample_graph(spec, window.primal())

    @staticmethod
    def membership(spec: OperatorSpec, p: PairPoint, tol: float) -> bool:
        if p.dim != spec.dim:
            raise InputError(f"Punto de dimensión {p.dim} para un operador en R^{spec.dim}")
        if isinstance(spec, Affine):
            return bool(np.max(np.abs(p.xs - spec.apply(p.x))) <= tol)
        if isinstance(spec, SubdiffPolyhedral):
            f_star = conjugate(MaxAffine(spec.slopes, spec.offsets))
            gap = spec.value(p.x) + evaluate(f_star, p.xs) - duality(p)
            return bool(gap <= tol)
        if isinstance(spec, FiniteGraph):
            z = p.flat()
            return any(float(np.max(np.abs(q.flat() - z))) <= tol for q in spec.points)
        if isinstance(spec, Restricted):
            return GraphSampler.membership(spec.inner, p, tol) and spec.window_contains(p)
        if isinstance(spec, Inverse):
            return GraphSampler.membership(spec.inner, p.swapped(), tol)
        raise InputError(f"Tipo de operador desconocido: {type(spec).__name__}")


def sample_graph(spec: OperatorSpec, window: Box) -> FiniteGraph:
    return GraphSampler.sample_graph(spec, window)


def membership(spec: OperatorSpec, p: PairPoint, tol: float = DEFAULT_TOLERANCES["membership"]) -> bool:
    return GraphSampler.membership(spec, p, tol)


def covering_sample(spec: OperatorSpec, window: Box) -> FiniteGraph:
    return GraphSampler.covering_sample(spec, window)


def pair_window(dim: int, window: Box) -> Box:
    return GraphSampler.pair_window(dim, window)
