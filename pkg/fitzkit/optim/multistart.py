# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Minimización no convexa multistart en una caja.

Arranques = esquinas de la caja ∪ arranques uniformes sembrados. Todas las
esquinas se evalúan; se pulen por descenso coordenado con pasos decrecientes
la mejor esquina y cada arranque sembrado. El arranque k usa la semilla
`cfg.seed + k`, y el mejor resultado se elige por argmin con desempate por
índice, así que el resultado es determinista para una `cfg.seed` dada.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from fitzkit.optim.xorshift import XorShift64Star
from fitzkit.utils.errors import InputError
from fitzkit.utils.tolerances import MULTISTART_DEFAULTS

logger = logging.getLogger(__name__)

# Por encima de este número de esquinas solo se evalúa un subconjunto sembrado.
MAX_CORNERS = 4096
# Barridos con un mismo paso antes de reducirlo.
MAX_SWEEPS_PER_STEP = 25


@dataclass(frozen=True)
class MultistartConfig:
    starts: int = MULTISTART_DEFAULTS["starts"]
    seed: int = 0
    max_iterations: int = MULTISTART_DEFAULTS["max_iterations"]
    step_tolerance: float = MULTISTART_DEFAULTS["step_tolerance"]

    def __post_init__(self):
        if self.starts < 1:
            raise InputError("MultistartConfig.starts debe ser >= 1")
        if self.max_iterations < 1 or self.step_tolerance <= 0:
            raise InputError("max_iterations y step_tolerance deben ser positivos")


@dataclass(frozen=True)
class StartLog:
    index: int
    origin: str
    initial_value: float
    value: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class MultistartResult:
    best_value: float
    best_point: np.ndarray
    starts: List[StartLog] = field(default_factory=list)

    @property
    def unconverged(self) -> int:
        return sum(1 for s in self.starts if not s.converged)

    @property
    def seeded(self) -> int:
        return sum(1 for s in self.starts if s.origin == "seeded")


class MultistartMinimizer:
    @staticmethod
    def _corners(lower: np.ndarray, upper: np.ndarray, seed: int) -> List[np.ndarray]:
        k = lower.size
        if 2 ** k <= MAX_CORNERS:
            return [
                np.where(np.array(bits, dtype=bool), upper, lower)
                for bits in itertools.product((0, 1), repeat=k)
            ]
        rng = XorShift64Star(seed ^ 0xC0FFEE)
        corners = [lower.copy()]
        for _ in range(MAX_CORNERS - 1):
            bits = np.array([rng.next_u64() & 1 for _ in range(k)], dtype=bool)
            corners.append(np.where(bits, upper, lower))
        return corners

    @staticmethod
    def coordinate_descent(
        objective: Callable[[np.ndarray], float],
        start: np.ndarray,
        lower: np.ndarray,
        upper: np.ndarray,
        max_iterations: int,
        step_tolerance: float,
    ):
        """
        Descenso coordenado con pasos que se reducen a la mitad cuando un
        barrido completo no mejora o tras `MAX_SWEEPS_PER_STEP` barridos con
        el mismo paso. La tolerancia de paso es relativa al ancho de la caja.

        Returns:
            (punto, valor, iteraciones, convergió)
        """
        point = start.astype(float).copy()
        value = float(objective(point))
        steps = 0.25 * (upper - lower)
        threshold = step_tolerance * max(1.0, float((upper - lower).max(initial=0.0)))
        iterations = 0
        sweeps_at_step = 0
        while iterations < max_iterations:
            if float(steps.max(initial=0.0)) < threshold:
                return point, value, iterations, True
            improved = False
            for i in range(point.size):
                for direction in (1.0, -1.0):
                    candidate = point.copy()
                    candidate[i] = min(upper[i], max(lower[i], point[i] + direction * steps[i]))
                    if candidate[i] == point[i]:
                        continue
                    cand_value = float(objective(candidate))
                    if cand_value < value:
                        point, value, improved = candidate, cand_value, True
                        break
            iterations += 1
            sweeps_at_step += 1
            if not improved or sweeps_at_step >= MAX_SWEEPS_PER_STEP:
                steps = steps * 0.5
                sweeps_at_step = 0
        return point, value, iterations, float(steps.max(initial=0.0)) < threshold

    @staticmethod
    def minimize_nonconvex(
        objective: Callable[[np.ndarray], float],
        lower: Sequence[float],
        upper: Sequence[float],
        cfg: Optional[MultistartConfig] = None,
        extra_starts: Sequence[np.ndarray] = (),
    ) -> MultistartResult:
        """
        Minimiza `objective` en la caja [lower, upper].

        Args:
            objective: función finita en la caja.
            extra_starts: puntos adicionales (p. ej. los mejores del barrido
                de grilla) que también se pulen.
        """
        cfg = cfg or MultistartConfig()
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.shape != upper.shape or np.any(lower > upper):
            raise InputError("Caja inválida para minimize_nonconvex")

        logs: List[StartLog] = []
        best_value, best_point, best_index = float("inf"), lower.copy(), -1

        def consider(index: int, point: np.ndarray, value: float) -> None:
            nonlocal best_value, best_point, best_index
            if value < best_value:
                best_value, best_point, best_index = value, point, index

        corners = MultistartMinimizer._corners(lower, upper, cfg.seed)
        corner_values = [float(objective(c)) for c in corners]
        for i, (corner, value) in enumerate(zip(corners, corner_values)):
            consider(i, corner, value)

        polish: List[tuple] = []
        best_corner = int(np.argmin(corner_values))
        polish.append(("corner", corners[best_corner]))
        for point in extra_starts:
            polish.append(("extra", np.clip(np.asarray(point, dtype=float), lower, upper)))
        for k in range(cfg.starts):
            rng = XorShift64Star(cfg.seed + k)
            polish.append(("seeded", rng.uniform_in(lower, upper)))

        offset = len(corners)
        for j, (origin, start) in enumerate(polish):
            initial = float(objective(start))
            point, value, iterations, converged = MultistartMinimizer.coordinate_descent(
                objective, start, lower, upper, cfg.max_iterations, cfg.step_tolerance
            )
            logs.append(StartLog(offset + j, origin, initial, value, iterations, converged))
            consider(offset + j, point, value)

        unconverged = sum(1 for log in logs if not log.converged)
        if unconverged:
            logger.warning(
                "multistart: %d de %d arranques agotaron el presupuesto sin converger",
                unconverged, len(logs),
            )
        logger.debug("multistart: mejor valor %.6g en el arranque %d", best_value, best_index)
        return MultistartResult(best_value, best_point, logs)


def minimize_nonconvex(objective, lower, upper, cfg=None, extra_starts=()) -> MultistartResult:
    return MultistartMinimizer.minimize_nonconvex(objective, lower, upper, cfg, extra_starts)
