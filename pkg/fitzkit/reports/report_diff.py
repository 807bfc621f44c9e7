# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Comparación campo a campo de reportes (archivos o directorios).

Se ignora `statistics.wall_time`. Con `verdict_only` solo se comparan
check, operador y estado.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List

from fitzkit.reports.check_report import load_report
from fitzkit.utils.errors import InputError

logger = logging.getLogger(__name__)

IGNORED_PATHS = {"statistics.wall_time"}
VERDICT_FIELDS = ("check", "operator", "status")


@dataclass
class ReportDiff:
    differences: List[str] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return not self.differences

    @property
    def exit_code(self) -> int:
        return 0 if self.equivalent else 1

    def render(self) -> str:
        if self.equivalent:
            return "reportes equivalentes"
        return "\n".join(self.differences)


class ReportDiffer:
    @staticmethod
    def _walk(a: Any, b: Any, path: str, out: List[str]) -> None:
        if path in IGNORED_PATHS:
            return
        if isinstance(a, dict) and isinstance(b, dict):
            for key in sorted(set(a) | set(b)):
                sub = f"{path}.{key}" if path else str(key)
                if key not in a or key not in b:
                    if sub not in IGNORED_PATHS:
                        out.append(f"{sub}: presente solo en {'b' if key not in a else 'a'}")
                    continue
                ReportDiffer._walk(a[key], b[key], sub, out)
            return
        if isinstance(a, list) and isinstance(b, list):
            if len(a) != len(b):
                out.append(f"{path}: longitud {len(a)} != {len(b)}")
                return
            for i, (x, y) in enumerate(zip(a, b)):
                ReportDiffer._walk(x, y, f"{path}[{i}]", out)
            return
        if a != b:
            out.append(f"{path}: {a!r} != {b!r}")

    @staticmethod
    def diff_files(a: Path, b: Path, verdict_only: bool = False) -> ReportDiff:
        """
        Raises:
            InputError: reporte ilegible o de otro chequeo.
        """
        ra, rb = load_report(a), load_report(b)
        if ra.check != rb.check:
            raise InputError(f"Los reportes son de chequeos distintos: {ra.check} / {rb.check}")
        da, db = ra.model_dump(mode="json"), rb.model_dump(mode="json")
        if verdict_only:
            da = {k: da[k] for k in VERDICT_FIELDS}
            db = {k: db[k] for k in VERDICT_FIELDS}
        result = ReportDiff()
        ReportDiffer._walk(da, db, "", result.differences)
        return result

    @staticmethod
    def diff_dirs(a: Path, b: Path, verdict_only: bool = False) -> ReportDiff:
        """Compara los *.json de ambos directorios emparejados por ruta relativa."""
        files_a = {p.relative_to(a) for p in Path(a).rglob("*.json")}
        files_b = {p.relative_to(b) for p in Path(b).rglob("*.json")}
        result = ReportDiff()
        for rel in sorted(files_a | files_b):
            if rel not in files_a or rel not in files_b:
                result.differences.append(f"{rel}: presente solo en {'b' if rel not in files_a else 'a'}")
                continue
            sub = ReportDiffer.diff_files(Path(a) / rel, Path(b) / rel, verdict_only)
            result.differences += [f"{rel}: {d}" for d in sub.differences]
        logger.debug("report_diff: %d archivos, %d diferencias", len(files_a | files_b), len(result.differences))
        return result

    @staticmethod
    def report_diff(a: Path, b: Path, verdict_only: bool = False) -> ReportDiff:
        a, b = Path(a), Path(b)
        if a.is_dir() != b.is_dir():
            raise InputError("Se deben comparar dos archivos o dos directorios")
        if a.is_dir():
            return ReportDiffer.diff_dirs(a, b, verdict_only)
        return ReportDiffer.diff_files(a, b, verdict_only)


def report_diff(a: Path, b: Path, verdict_only: bool = False) -> ReportDiff:
    return ReportDiffer.report_diff(a, b, verdict_only)
