# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Polar monótono A^μ = {z : ⟨z.x − y, z.x* − y*⟩ ≥ 0 ∀ (y, y*) ∈ A}.

- `polar_contains`: test directo y test por φ_A (z ∈ A^μ ⟺ φ_A(z) ≤ π(z)),
  que deben coincidir siempre.
- `polar_monotone_decide`: busca dos puntos del polar con producto negativo
  (barrido de grilla + multistart penalizado). Un certificado es exacto;
  "Monotone" es un veredicto acotado por el presupuesto de búsqueda.
- `phi_ge_pi_check`: prueba φ_A ≥ π en una ventana (pre-maximalidad).
- `unique_extension_oracle`: oráculo de pertenencia a la única extensión
  maximal monótona.
- `cond_as_check`: (S_T)*(x*, x) ≥ ⟨x*, x⟩ por dos caminos de cálculo.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from fitzkit.convexfn.conjugation import conjugate
from fitzkit.convexfn.representations import ConvexFuncRep, GridFunc, evaluate
from fitzkit.core.graph_sampler import covering_sample, membership, pair_window
from fitzkit.core.operator_spec import FiniteGraph, OperatorSpec, invert_graph, is_monotone_set
from fitzkit.core.pair_space import Box, PairPoint, duality, monotone_product
from fitzkit.fitz.fitzpatrick import ExactFitzpatrick, PhiFunction, phi_of, s_of
from fitzkit.optim.multistart import MultistartConfig, minimize_nonconvex
from fitzkit.reports.check_report import CheckReport, effort_statistics, witness
from fitzkit.utils.counters import count_evaluations, effort_scope
from fitzkit.utils.errors import ConsistencyError, InputError, RefusalError
from fitzkit.utils.tolerances import DEFAULT_TOLERANCES, MULTISTART_DEFAULTS

logger = logging.getLogger(__name__)

# Valor de recorte del objetivo del pulido de φ − π (φ puede ser +inf).
CLIP_VALUE = 1e6
PAIR_CHUNK = 512
MAX_WITNESSES = 5


@dataclass(frozen=True)
class PolarCertificate:
    p: PairPoint
    q: PairPoint
    product: float
    polar_margins: Tuple[float, float]

    def to_witness(self) -> dict:
        return witness("polar_certificate", p=self.p, q=self.q, product=self.product,
                       polar_margins=list(self.polar_margins))


@dataclass
class PolarDecision:
    """Monotone (veredicto acotado) o NotMonotone con certificado."""

    certificate: Optional[PolarCertificate]
    window: Box
    statistics: Dict[str, float] = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        return self.certificate is None

    @property
    def verdict(self) -> str:
        return "Monotone" if self.monotone else "NotMonotone"

    def to_check_report(self, operator: str, seed: int = 0) -> CheckReport:
        if self.monotone:
            return CheckReport(
                check="polar-decide",
                operator=operator,
                status="bounded-pass",
                window=self.window,
                tolerances={"membership": 0.0},
                statistics=self.statistics,
                details={"verdict": self.verdict, "note": "veredicto acotado por la búsqueda, no es una prueba"},
                seed=seed,
            )
        return CheckReport(
            check="polar-decide",
            operator=operator,
            status="fail",
            window=self.window,
            tolerances={"membership": 0.0},
            witnesses=[self.certificate.to_witness()],
            statistics=self.statistics,
            details={"verdict": self.verdict},
            seed=seed,
        )


class PolarManager:
    @staticmethod
    def polar_margins(a: FiniteGraph, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Para cada fila z: (min_A ⟨z.x − y, z.x* − y*⟩, π(z) − φ_A(z)).

        Raises:
            ConsistencyError: si los dos tests no coinciden.
        """
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        n = a.dim
        y, ys = a.arrays()
        zx, zs = rows[:, :n], rows[:, n:]
        count_evaluations(len(rows))
        direct = np.einsum("imk,imk->im", zx[:, None, :] - y[None], zs[:, None, :] - ys[None]).min(axis=1)
        pi = np.einsum("ik,ik->i", zx, zs)
        phi = phi_of(a).eval_rows(rows)
        via_phi = pi - phi
        scale = np.maximum(1.0, np.maximum(np.abs(phi), np.abs(pi)))
        disagree = ((direct >= 0) != (via_phi >= 0)) & (np.abs(direct - via_phi) > 1e-9 * scale)
        if np.any(disagree):
            i = int(np.flatnonzero(disagree)[0])
            raise ConsistencyError(
                f"Test polar directo ({direct[i]:.3g}) y por φ ({via_phi[i]:.3g}) no coinciden en {rows[i].tolist()}"
            )
        return direct, via_phi

    @staticmethod
    def polar_contains(a: FiniteGraph, z: PairPoint) -> bool:
        if not isinstance(a, FiniteGraph) or len(a) == 0:
            raise InputError("polar_contains requiere un grafo finito no vacío")
        if z.dim != a.dim:
            raise InputError(f"Punto de dimensión {z.dim} para un grafo en R^{a.dim}")
        direct, _ = PolarManager.polar_margins(a, z.flat()[None, :])
        return bool(direct[0] >= 0.0)

    @staticmethod
    def _certificate(a: FiniteGraph, p: PairPoint, q: PairPoint) -> Optional[PolarCertificate]:
        """Certificado re-verificado exactamente, o None."""
        product = monotone_product(p, q)
        if product >= 0.0:
            return None
        if not (PolarManager.polar_contains(a, p) and PolarManager.polar_contains(a, q)):
            return None
        phi = phi_of(a)
        margins = (evaluate(phi, p) - duality(p), evaluate(phi, q) - duality(q))
        return PolarCertificate(p, q, product, margins)

    @staticmethod
    def _grid_scan(a: FiniteGraph, window: Box):
        rows = window.grid()
        direct, _ = PolarManager.polar_margins(a, rows)
        polar = rows[direct >= 0.0]
        n = a.dim
        best, best_pair, scanned = math.inf, None, 0
        for start in range(0, len(polar), PAIR_CHUNK):
            block = polar[start:start + PAIR_CHUNK]
            dx = block[:, None, :n] - polar[None, :, :n]
            ds = block[:, None, n:] - polar[None, :, n:]
            products = np.einsum("ijk,ijk->ij", dx, ds)
            scanned += products.size
            flat = int(np.argmin(products))
            i, j = divmod(flat, products.shape[1])
            if products[i, j] < best:
                best, best_pair = float(products[i, j]), (start + i, j)
        return polar, best, best_pair, len(rows), scanned

    @staticmethod
    def polar_monotone_decide(
        a: FiniteGraph,
        window: Box,
        budget: Optional[MultistartConfig] = None,
        penalty: float = MULTISTART_DEFAULTS["penalty"],
    ) -> PolarDecision:
        """
        Busca p, q ∈ A^μ ∩ ventana con ⟨p.x − q.x, p.x* − q.x*⟩ < 0.

        Raises:
            RefusalError: si A no es monótono.
        """
        ok, pair = is_monotone_set(a)
        if not ok:
            raise RefusalError(f"El conjunto base no es monótono: {pair}")
        window = pair_window(a.dim, window)
        budget = budget or MultistartConfig()
        started = time.perf_counter()
        with effort_scope() as effort:
            polar, best, best_pair, grid_points, scanned = PolarManager._grid_scan(a, window)
            stats = {"grid_points": grid_points, "polar_grid_points": len(polar), "pairs_scanned": scanned}
            if best < 0.0:
                p = PairPoint.from_flat(polar[best_pair[0]])
                q = PairPoint.from_flat(polar[best_pair[1]])
                cert = PolarManager._certificate(a, p, q)
                if cert is not None:
                    logger.info("polar: certificado de grilla con producto %.6g", cert.product)
                    stats.update(effort_statistics(effort, started))
                    return PolarDecision(cert, window, stats)

            n, k = a.dim, 2 * a.dim
            phi = phi_of(a)

            # producto + ρ Σ max(0, φ_A − π)² sobre el par (p, q)
            def objective(w: np.ndarray) -> float:
                pq = w.reshape(2, k)
                pi = np.einsum("ik,ik->i", pq[:, :n], pq[:, n:])
                violation = np.maximum(0.0, phi.eval_rows(pq) - pi)
                product = float((pq[0, :n] - pq[1, :n]) @ (pq[0, n:] - pq[1, n:]))
                return product + penalty * float(np.sum(violation ** 2))

            extra = []
            if best_pair is not None:
                extra.append(np.concatenate([polar[best_pair[0]], polar[best_pair[1]]]))
            lower = np.concatenate([window.lower, window.lower])
            upper = np.concatenate([window.upper, window.upper])
            result = minimize_nonconvex(objective, lower, upper, budget, extra)
            p = PairPoint.from_flat(result.best_point[:k])
            q = PairPoint.from_flat(result.best_point[k:])
            cert = PolarManager._certificate(a, p, q)
            stats.update({
                "multistart_best": result.best_value,
                "multistart_starts": len(result.starts),
                "multistart_seeded": result.seeded,
                "multistart_unconverged": result.unconverged,
            })
            if result.unconverged:
                logger.warning("polar: %d arranques sin converger", result.unconverged)
            stats.update(effort_statistics(effort, started))
        if cert is not None:
            logger.info("polar: certificado del multistart con producto %.6g", cert.product)
        return PolarDecision(cert, window, stats)

    @staticmethod
    def phi_ge_pi_check(spec: OperatorSpec, window: Box, tol: float,
                        budget: Optional[MultistartConfig] = None, operator: str = "operator") -> CheckReport:
        """
        Minimiza φ_A − π en la ventana (grilla + pulido multistart). Pasa si
        el mínimo es ≥ −tol; además verifica b(φ_A) = L(φ_A) en la grilla.

        Raises:
            InputError: si el operador no tiene φ cerrada.
        """
        if isinstance(spec, FiniteGraph):
            raise InputError("phi_ge_pi_check no se aplica a grafos finitos")
        phi = ExactFitzpatrick.for_spec(spec)
        if phi is None:
            raise InputError(f"{type(spec).__name__} no tiene φ en forma cerrada")
        window = pair_window(spec.dim, window)
        budget = budget or MultistartConfig(starts=8)
        started = time.perf_counter()
        with effort_scope() as effort:
            rows = window.grid()
            points = [PairPoint.from_flat(r) for r in rows]
            gaps = np.array([phi(p) - duality(p) for p in points])
            i_min = int(np.argmin(gaps))

            def objective(z: np.ndarray) -> float:
                p = PairPoint.from_flat(z)
                return min(CLIP_VALUE, phi(p) - duality(p))

            result = minimize_nonconvex(objective, window.lower, window.upper, budget, [rows[i_min]])
            if result.best_value < gaps[i_min]:
                min_gap, min_point = float(result.best_value), PairPoint.from_flat(result.best_point)
            else:
                min_gap, min_point = float(gaps[i_min]), points[i_min]

            # b(φ) \ L(φ) en la grilla: φ < π − tol
            b_minus_l = [(g, p) for g, p in zip(gaps, points) if g < -tol]
            b_minus_l.sort(key=lambda t: t[0])
            witnesses = []
            if min_gap < -tol:
                witnesses.append(witness("phi_below_pi", point=min_point, gap=min_gap))
                witnesses += [witness("b_not_l", point=p, gap=g) for g, p in b_minus_l[:MAX_WITNESSES]]
            return CheckReport(
                check="premax",
                operator=operator,
                status="fail" if witnesses else "pass",
                window=window,
                tolerances={"grid": tol},
                witnesses=witnesses,
                statistics=dict(effort_statistics(effort, started), multistart_seeded=result.seeded,
                                multistart_unconverged=result.unconverged),
                details={"min_gap": min_gap, "b_equals_l_on_grid": not b_minus_l},
            )

    @staticmethod
    def cond_as_check(spec: OperatorSpec, window: Box, tol: float,
                      members: Sequence[ConvexFuncRep] = (), operator: str = "operator") -> CheckReport:
        """
        (S_T)*(x*, x) ≥ ⟨x*, x⟩ en la grilla; (S_T)* se calcula como
        conjugada de S del grafo muestreado y como φ del grafo invertido.

        Con `members`, verifica también h*(x*, x) ≥ ⟨x*, x⟩ para cada h.
        """
        window = pair_window(spec.dim, window)
        started = time.perf_counter()
        with effort_scope() as effort:
            g = covering_sample(spec, window)
            via_s = conjugate(s_of(g))
            via_inverse = phi_of(invert_graph(g))
            rows = window.grid()
            v1, v2 = via_s.eval_rows(rows), via_inverse.eval_rows(rows)
            agreement = float(np.max(np.abs(v1 - v2)))
            if agreement > tol:
                i = int(np.argmax(np.abs(v1 - v2)))
                raise ConsistencyError(
                    f"(S_T)* por conjugación ({v1[i]:.6g}) y por el grafo invertido ({v2[i]:.6g}) difieren en {rows[i].tolist()}"
                )
            n = spec.dim
            gaps = v1 - np.einsum("ik,ik->i", rows[:, :n], rows[:, n:])
            min_gap = float(gaps.min())
            witnesses = []
            if min_gap < -tol:
                order = np.argsort(gaps)[:MAX_WITNESSES]
                witnesses = [witness("cond_as", point=PairPoint.from_flat(rows[i]), gap=gaps[i])
                             for i in order if gaps[i] < -tol]
            member_gaps = [PolarManager._conjugate_lower_gap(h, window) for h in members]
            for index, (gap, point) in enumerate(member_gaps):
                if gap < -tol:
                    witnesses.append(witness("conjugate_lower_bound", member=index, point=point, gap=gap))
            return CheckReport(
                check="cond-as",
                operator=operator,
                status="fail" if witnesses else "pass",
                window=window,
                tolerances={"grid": tol},
                witnesses=witnesses,
                statistics=effort_statistics(effort, started),
                details={
                    "min_gap": min_gap,
                    "path_agreement": agreement,
                    "graph_points": len(g),
                    "member_min_gaps": [gap for gap, _ in member_gaps],
                },
            )

    @staticmethod
    def _conjugate_lower_gap(h: ConvexFuncRep, window: Box) -> Tuple[float, PairPoint]:
        """min sobre la grilla de h*(w) − ⟨w.x, w.x*⟩."""
        h_star = conjugate(h, dual_box=window) if isinstance(h, GridFunc) else conjugate(h)
        rows = window.grid()
        n = window.dim // 2
        gaps = h_star.eval_rows(rows) - np.einsum("ik,ik->i", rows[:, :n], rows[:, n:])
        i = int(np.argmin(gaps))
        return float(gaps[i]), PairPoint.from_flat(rows[i])


@dataclass(frozen=True)
class ExtensionOracle:
    """Pertenencia a la única extensión maximal: z ↦ [φ_A(z) ≤ π(z)]."""

    base: Union[FiniteGraph, OperatorSpec]
    phi: PhiFunction
    tol: float = DEFAULT_TOLERANCES["membership"]

    def contains(self, z: PairPoint) -> bool:
        return self.phi(z) <= duality(z) + self.tol

    def sample(self, window: Box) -> FiniteGraph:
        window = pair_window(self.base.dim, window)
        points = [p for p in (PairPoint.from_flat(r) for r in window.grid()) if self.contains(p)]
        if not points:
            raise InputError(f"El oráculo no acepta ningún punto de {window}")
        return FiniteGraph(tuple(points))


def unique_extension_oracle(
    a: Union[FiniteGraph, OperatorSpec],
    evidence: Union[PolarDecision, CheckReport, None] = None,
    window: Optional[Box] = None,
    budget: Optional[MultistartConfig] = None,
) -> ExtensionOracle:
    """
    Oráculo de la única extensión maximal monótona de A.

    La precondición (polar monótono o φ_A ≥ π) se toma de `evidence` o se
    establece corriendo la decisión sobre `window`.

    Raises:
        RefusalError: si la precondición no se cumple o no puede establecerse.
    """
    if evidence is None:
        if window is None:
            raise RefusalError("Se necesita evidencia o una ventana para establecer la precondición")
        if isinstance(a, FiniteGraph):
            evidence = PolarManager.polar_monotone_decide(a, window, budget)
        else:
            evidence = PolarManager.phi_ge_pi_check(a, window, DEFAULT_TOLERANCES["grid"], budget)
    if isinstance(evidence, PolarDecision) and not evidence.monotone:
        raise RefusalError(f"El polar no es monótono: producto {evidence.certificate.product:.6g}")
    if isinstance(evidence, CheckReport) and not evidence.passed:
        raise RefusalError(f"La precondición falló: {evidence.check} = {evidence.status}")
    if isinstance(a, FiniteGraph):
        rep = phi_of(a)
        return ExtensionOracle(a, lambda z: evaluate(rep, z))
    phi = ExactFitzpatrick.for_spec(a)
    if phi is None:
        raise RefusalError(f"{type(a).__name__} no tiene φ en forma cerrada")
    return ExtensionOracle(a, phi)


def polar_contains(a: FiniteGraph, z: PairPoint) -> bool:
    return PolarManager.polar_contains(a, z)


def polar_monotone_decide(a: FiniteGraph, window: Box, budget: Optional[MultistartConfig] = None) -> PolarDecision:
    return PolarManager.polar_monotone_decide(a, window, budget)


def phi_ge_pi_check(spec: OperatorSpec, window: Box, tol: float,
                    budget: Optional[MultistartConfig] = None) -> CheckReport:
    return PolarManager.phi_ge_pi_check(spec, window, tol, budget)


def cond_as_check(spec: OperatorSpec, window: Box, tol: float,
                  members: Sequence[ConvexFuncRep] = ()) -> CheckReport:
    return PolarManager.cond_as_check(spec, window, tol, members)


def oracle_matches_membership(oracle: ExtensionOracle, spec: OperatorSpec, window: Box, tol: float) -> bool:
    """True si el oráculo coincide con `membership(spec)` en toda la grilla."""
    window = pair_window(spec.dim, window)
    return all(
        oracle.contains(p) == membership(spec, p, tol)
        for p in (PairPoint.from_flat(r) for r in window.grid())
    )
