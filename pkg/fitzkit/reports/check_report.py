# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
CheckReport: resultado serializable de un chequeo (estado, testigos,
tolerancias y estadísticas de esfuerzo).
"""

import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from fitzkit import __version__
from fitzkit.convexfn.representations import encode_extended
from fitzkit.core.pair_space import Box, PairPoint
from fitzkit.dto.report_out_dto import CheckReportOutDto
from fitzkit.utils.counters import EffortCounter
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)

STATUSES = ("pass", "fail", "bounded-pass", "refused")


def to_jsonable(value: Any) -> Any:
    """numpy, PairPoint, Box y reales extendidos → tipos JSON."""
    if isinstance(value, PairPoint):
        return {"x": value.x.tolist(), "xs": value.xs.tolist()}
    if isinstance(value, Box):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return encode_extended(float(value))
    return value


def witness(kind: str, **payload) -> Dict[str, Any]:
    return {"kind": kind, **to_jsonable(payload)}


def effort_statistics(effort: EffortCounter, started: float) -> Dict[str, float]:
    stats = dict(effort.as_dict())
    stats["wall_time"] = time.perf_counter() - started
    return stats


@dataclass
class CheckReport:
    check: str
    operator: str
    status: str
    window: Optional[Box] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    statistics: Dict[str, float] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    version: str = __version__

    def __post_init__(self):
        if self.status not in STATUSES:
            raise InputError(f"Estado de reporte desconocido: {self.status}")
        if self.status == "fail" and not self.witnesses:
            raise InputError(f"El reporte '{self.check}' falla sin testigos")

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "bounded-pass")

    def to_dto(self) -> CheckReportOutDto:
        return CheckReportOutDto(
            check=self.check,
            operator=self.operator,
            window=self.window.to_dict() if self.window is not None else None,
            tolerances={k: float(v) for k, v in self.tolerances.items()},
            status=self.status,
            witnesses=to_jsonable(self.witnesses),
            statistics={k: float(v) for k, v in self.statistics.items()},
            details=to_jsonable(self.details),
            version=self.version,
            seed=self.seed,
        )

    def to_json(self) -> str:
        return self.to_dto().model_dump_json(indent=2)

    def write_json(self, path: Path) -> Path:
        """Escritura atómica: archivo temporal en el mismo directorio + os.replace."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(self.to_json())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.info("reporte escrito en %s", path)
        return path


def load_report(path: Path) -> CheckReportOutDto:
    """Lee y valida un reporte JSON."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return CheckReportOutDto.model_validate(data)
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        raise InputError(f"Reporte inválido {path}: {e}") from e
