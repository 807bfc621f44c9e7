# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Agrandamiento T^ε = {z : ⟨z.x − y, z.x* − y*⟩ ≥ −ε ∀ (y, y*) ∈ T}.

El ínfimo sobre el grafo es π(z) − φ_T(z): exacto cuando φ_T tiene forma
cerrada; si no, se calcula sobre el grafo muestreado en la ventana más el
punto resolvente de z (cuando el operador lo admite), y el resultado lleva la
marca `exact=False`.
"""

import logging
import time
from dataclasses import dataclass
from typing import List

import numpy as np

from fitzkit.convexfn.representations import evaluate
from fitzkit.core.graph_sampler import covering_sample, membership, pair_window
from fitzkit.core.operator_spec import OperatorSpec
from fitzkit.core.pair_space import Box, PairPoint, as_vector, duality, monotone_product
from fitzkit.enlarge.resolvent import resolvent_step
from fitzkit.fitz.fitzpatrick import ExactFitzpatrick, phi_of
from fitzkit.reports.check_report import CheckReport, effort_statistics, witness
from fitzkit.utils.counters import effort_scope
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5


@dataclass(frozen=True)
class EnlargementGap:
    """inf sobre el grafo de ⟨z.x − y, z.x* − y*⟩ y si el valor es exacto."""

    value: float
    exact: bool


class Enlargement:
    @staticmethod
    def te_gap(spec: OperatorSpec, z: PairPoint, window: Box) -> EnlargementGap:
        if z.dim != spec.dim:
            raise InputError(f"Punto de dimensión {z.dim} para un operador en R^{spec.dim}")
        phi = ExactFitzpatrick.for_spec(spec)
        if phi is not None:
            return EnlargementGap(duality(z) - phi(z), True)
        sample = covering_sample(spec, pair_window(spec.dim, window))
        value = duality(z) - evaluate(phi_of(sample), z)
        # el punto resolvente separa a z del grafo aunque caiga fuera de la ventana
        j = resolvent_step(spec, z)
        if j is not None:
            value = min(value, monotone_product(z, j))
        logger.debug("te_gap: ínfimo sobre %d puntos muestreados", len(sample))
        return EnlargementGap(value, False)

    @staticmethod
    def te_contains(spec: OperatorSpec, eps: float, z: PairPoint, window: Box) -> bool:
        if eps < 0:
            raise InputError(f"ε debe ser no negativo, se recibió {eps}")
        return Enlargement.te_gap(spec, z, window).value >= -eps

    @staticmethod
    def te_slice(spec: OperatorSpec, eps: float, x, window: Box) -> List[np.ndarray]:
        """Nodos x* del eje dual de la ventana con (x, x*) ∈ T^ε."""
        x = as_vector(x, "x")
        dual = pair_window(spec.dim, window).dual()
        return [
            xs for xs in dual.grid()
            if Enlargement.te_contains(spec, eps, PairPoint(x, xs), window)
        ]

    @staticmethod
    def t0_check(spec: OperatorSpec, window: Box, tol: float, operator: str = "operator") -> CheckReport:
        """
        T⁰ = T en la grilla: z ∈ T^tol ⟺ z ∈ T (pertenencia con tolerancia tol).
        """
        window = pair_window(spec.dim, window)
        started = time.perf_counter()
        with effort_scope() as effort:
            bad = []
            exact = True
            for row in window.grid():
                z = PairPoint.from_flat(row)
                gap = Enlargement.te_gap(spec, z, window)
                exact = exact and gap.exact
                in_t0 = gap.value >= -tol
                member = membership(spec, z, tol)
                if in_t0 != member:
                    kind = "extension_point" if in_t0 else "graph_point_outside_t0"
                    bad.append(witness(kind, point=z, gap=gap.value))
            return CheckReport(
                check="t0",
                operator=operator,
                status="fail" if bad else "pass",
                window=window,
                tolerances={"membership": tol},
                witnesses=bad[:MAX_WITNESSES],
                statistics=effort_statistics(effort, started),
                details={"exact": exact, "mismatches": len(bad)},
            )


def te_gap(spec: OperatorSpec, z: PairPoint, window: Box) -> EnlargementGap:
    return Enlargement.te_gap(spec, z, window)


def te_contains(spec: OperatorSpec, eps: float, z: PairPoint, window: Box) -> bool:
    return Enlargement.te_contains(spec, eps, z, window)


def te_slice(spec: OperatorSpec, eps: float, x, window: Box) -> List[np.ndarray]:
    return Enlargement.te_slice(spec, eps, x, window)


def t0_check(spec: OperatorSpec, window: Box, tol: float) -> CheckReport:
    return Enlargement.t0_check(spec, window, tol)
