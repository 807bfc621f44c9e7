# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Chequeos estructurales: convexidad del grafo (punto medio), ajuste afín y
maximalidad en una ventana. `lemma_bas_suite` verifica sobre un corpus que
todo operador maximal con grafo convexo es afín.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from fitzkit.core.graph_sampler import membership, pair_window, sample_graph
from fitzkit.core.operator_spec import FiniteGraph, OperatorSpec
from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.enlarge.enlargement import te_gap
from fitzkit.optim.xorshift import XorShift64Star
from fitzkit.reports.check_report import CheckReport, effort_statistics, witness
from fitzkit.utils.counters import effort_scope
from fitzkit.zoo.operator_builder import ZooOperator

logger = logging.getLogger(__name__)

MIDPOINT_TOL = 1e-9
MAX_EXTENSION_WITNESSES = 25


def default_window(dim: int) -> Box:
    """Ventana de pares [−2, 2]^{2n}: 9 nodos por eje en R, 5 en dimensión mayor."""
    return Box.cube(2 * dim, -2.0, 2.0, 9 if dim == 1 else 5)


@dataclass(frozen=True)
class ConvexityResult:
    passed: bool
    pairs_tested: int
    certificate: Optional[Tuple[PairPoint, PairPoint, PairPoint]] = None

    def to_witness(self) -> dict:
        p, q, mid = self.certificate
        return witness("midpoint", p=p, q=q, midpoint=mid)


@dataclass(frozen=True)
class AffineFit:
    basis: np.ndarray
    offset: np.ndarray
    residual: float

    def within(self, tol: float) -> bool:
        return self.residual <= tol


class StructureChecker:
    @staticmethod
    def _pairs(count: int, trials: int, seed: int):
        total = count * (count - 1) // 2
        if total <= trials:
            return list(itertools.combinations(range(count), 2))
        rng = XorShift64Star(seed)
        pairs = []
        while len(pairs) < trials:
            i, j = rng.randbelow(count), rng.randbelow(count)
            if i != j:
                pairs.append((min(i, j), max(i, j)))
        return pairs

    @staticmethod
    def convexity_check(spec: OperatorSpec, trials: int = 200, seed: int = 0,
                        window: Optional[Box] = None) -> ConvexityResult:
        """
        Prueba la pertenencia del punto medio de pares de puntos del grafo
        muestreado; el primer punto medio rechazado es el certificado.
        """
        window = window or default_window(spec.dim)
        points = sample_graph(spec, window).points
        pairs = StructureChecker._pairs(len(points), trials, seed)
        for tested, (i, j) in enumerate(pairs, start=1):
            p, q = points[i], points[j]
            mid = PairPoint(0.5 * (p.x + q.x), 0.5 * (p.xs + q.xs))
            if not membership(spec, mid, MIDPOINT_TOL):
                # el certificado se re-verifica antes de reportarlo
                if membership(spec, p, MIDPOINT_TOL) and membership(spec, q, MIDPOINT_TOL):
                    logger.debug("convexity_check: punto medio %s fuera del grafo", mid)
                    return ConvexityResult(False, tested, (p, q, mid))
        return ConvexityResult(True, len(pairs))

    @staticmethod
    def affine_fit(g: FiniteGraph, tol: float = 1e-9) -> AffineFit:
        """
        Traslada por el primer punto y ajusta un subespacio de dimensión n
        (SVD); el residuo es la mayor distancia de un punto trasladado.
        """
        flats = np.array([p.flat() for p in g.points])
        offset = flats[0]
        shifted = flats - offset
        if len(flats) == 1:
            return AffineFit(np.zeros((0, flats.shape[1])), offset, 0.0)
        _, _, vt = np.linalg.svd(shifted, full_matrices=False)
        basis = vt[:min(g.dim, vt.shape[0])]
        residual_vectors = shifted - shifted @ basis.T @ basis
        residual = float(np.max(np.linalg.norm(residual_vectors, axis=1)))
        logger.debug("affine_fit: residuo %.3g (tol %.3g)", residual, tol)
        return AffineFit(basis, offset, residual)

    @staticmethod
    def maximality_check(spec: OperatorSpec, window: Box, tol: float, operator: str = "operator") -> CheckReport:
        """
        En la grilla: z ∈ T⁰ ⟹ z ∈ T. Los puntos que fallan son testigos de
        extensión (podrían agregarse al grafo sin perder monotonía).
        """
        window = pair_window(spec.dim, window)
        started = time.perf_counter()
        with effort_scope() as effort:
            extension = []
            for row in window.grid():
                z = PairPoint.from_flat(row)
                gap = te_gap(spec, z, window)
                if gap.value >= -tol and not membership(spec, z, tol):
                    extension.append(witness("extension_point", point=z, gap=gap.value))
            return CheckReport(
                check="maximality",
                operator=operator,
                status="fail" if extension else "pass",
                window=window,
                tolerances={"membership": tol},
                witnesses=extension[:MAX_EXTENSION_WITNESSES],
                statistics=effort_statistics(effort, started),
                details={"extension_points": len(extension)},
            )

    @staticmethod
    def lemma_bas_suite(corpus: Sequence[ZooOperator], window: Optional[Box], tol: float,
                        trials: int = 200, seed: int = 0) -> CheckReport:
        """
        Para cada operador maximal (en la ventana) con grafo convexo exige
        residuo afín ≤ tol; los que fallan convexidad quedan exentos con su
        certificado registrado.
        """
        started = time.perf_counter()
        with effort_scope() as effort:
            entries = []
            bad = []
            for op in corpus:
                w = window if window is not None and window.dim in (op.dim, 2 * op.dim) else default_window(op.dim)
                maximal = StructureChecker.maximality_check(op.spec, w, tol, op.name).status == "pass"
                convex = StructureChecker.convexity_check(op.spec, trials, seed, w)
                entry = {"operator": op.name, "maximal": maximal, "convex": convex.passed}
                if not convex.passed:
                    entry["certificate"] = convex.to_witness()
                elif maximal:
                    fit = StructureChecker.affine_fit(sample_graph(op.spec, w), tol)
                    entry["residual"] = fit.residual
                    if not fit.within(tol):
                        bad.append(witness("not_affine", operator=op.name, residual=fit.residual))
                entries.append(entry)
            return CheckReport(
                check="lemma-bas",
                operator="corpus",
                status="fail" if bad else "pass",
                window=window,
                tolerances={"affine": tol},
                witnesses=bad,
                statistics=effort_statistics(effort, started),
                details={"entries": entries},
            )


def convexity_check(spec: OperatorSpec, trials: int = 200, seed: int = 0,
                    window: Optional[Box] = None) -> ConvexityResult:
    return StructureChecker.convexity_check(spec, trials, seed, window)


def affine_fit(g: FiniteGraph, tol: float = 1e-9) -> AffineFit:
    return StructureChecker.affine_fit(g, tol)


def maximality_check(spec: OperatorSpec, window: Box, tol: float) -> CheckReport:
    return StructureChecker.maximality_check(spec, window, tol)


def lemma_bas_suite(corpus: Sequence[ZooOperator], window: Optional[Box], tol: float,
                    trials: int = 200, seed: int = 0) -> CheckReport:
    return StructureChecker.lemma_bas_suite(corpus, window, tol, trials, seed)
