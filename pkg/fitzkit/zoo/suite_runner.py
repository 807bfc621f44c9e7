# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Suite completa sobre un corpus de operadores y comparación con los
resultados dorados (`golden.json`: operador → chequeo → estado).

Chequeos por operador:
- maximality, convexity, family, bs-identity: siempre.
- cond-as, t0: solo operadores etiquetados maximales.
- premax: operadores simbólicos con φ cerrada.
- polar-decide: grafos finitos.
Además, a nivel de corpus, `lemma-bas`.
"""

import json
import logging
import time
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence

from fitzkit.core.graph_sampler import covering_sample
from fitzkit.core.operator_spec import FiniteGraph
from fitzkit.core.pair_space import Box
from fitzkit.enlarge.enlargement import Enlargement
from fitzkit.fitz.family_checker import FamilyChecker, grid_points
from fitzkit.fitz.fitzpatrick import ExactFitzpatrick, phi_of
from fitzkit.optim.multistart import MultistartConfig
from fitzkit.polar.polar_manager import PolarManager
from fitzkit.reports.check_report import CheckReport, effort_statistics
from fitzkit.utils.counters import effort_scope
from fitzkit.utils.errors import InputError
from fitzkit.utils.tolerances import DEFAULT_TOLERANCES, MAX_SUITE_DIMENSION
from fitzkit.zoo.operator_builder import ZooOperator
from fitzkit.zoo.structure_checker import StructureChecker, default_window

logger = logging.getLogger(__name__)

CORPUS_ENTRY = "corpus"
SuiteResults = Dict[str, List[CheckReport]]


class SuiteRunner:
    @staticmethod
    def window_for(op: ZooOperator, window: Optional[Box]) -> Box:
        if window is not None and window.dim in (op.dim, 2 * op.dim):
            return window
        return default_window(op.dim)

    @staticmethod
    def convexity_report(op: ZooOperator, window: Box, trials: int, seed: int) -> CheckReport:
        started = time.perf_counter()
        with effort_scope() as effort:
            result = StructureChecker.convexity_check(op.spec, trials, seed, window)
            return CheckReport(
                check="convexity",
                operator=op.name,
                status="pass" if result.passed else "fail",
                window=window,
                tolerances={"membership": 1e-9},
                witnesses=[] if result.passed else [result.to_witness()],
                statistics=effort_statistics(effort, started),
                details={"pairs_tested": result.pairs_tested},
            )

    @staticmethod
    def family_report(op: ZooOperator, window: Box, tol: float) -> CheckReport:
        """φ del grafo muestreado frente a ℱ_T: pasa solo si T es maximal."""
        started = time.perf_counter()
        with effort_scope() as effort:
            family = FamilyChecker.in_family_check(phi_of(covering_sample(op.spec, window)), op.spec, window, tol)
            stats = effort_statistics(effort, started)
        return family.to_check_report("family", op.name, window, stats)

    @staticmethod
    def run_operator(op: ZooOperator, window: Optional[Box] = None,
                     tolerances: Optional[Mapping[str, float]] = None,
                     seed: int = 0, budget: Optional[MultistartConfig] = None) -> List[CheckReport]:
        if op.dim > MAX_SUITE_DIMENSION:
            raise InputError(f"'{op.name}': la suite admite dimensión <= {MAX_SUITE_DIMENSION}")
        tol = dict(DEFAULT_TOLERANCES, **(tolerances or {}))
        w = SuiteRunner.window_for(op, window)
        budget = budget or MultistartConfig(starts=8, seed=seed)
        logger.info("suite: %s (dim %d, maximal=%s)", op.name, op.dim, op.maximal)

        reports = [
            StructureChecker.maximality_check(op.spec, w, tol["lp"], op.name),
            SuiteRunner.convexity_report(op, w, 200, seed),
            SuiteRunner.family_report(op, w, tol["lp"]),
            FamilyChecker.bs_identity_check(
                covering_sample(op.spec, w), grid_points(w, op.dim), tol["lp"], op.name
            ),
        ]
        if op.maximal:
            reports.append(PolarManager.cond_as_check(op.spec, w, tol["grid"], operator=op.name))
            reports.append(Enlargement.t0_check(op.spec, w, tol["lp"], op.name))
        if isinstance(op.spec, FiniteGraph):
            decision = PolarManager.polar_monotone_decide(op.spec, w, budget)
            reports.append(decision.to_check_report(op.name, seed))
        elif ExactFitzpatrick.for_spec(op.spec) is not None:
            reports.append(PolarManager.phi_ge_pi_check(op.spec, w, tol["grid"], budget, op.name))
        for report in reports:
            report.seed = seed
        return reports

    @staticmethod
    def run_suite(corpus: Sequence[ZooOperator], window: Optional[Box] = None,
                  tolerances: Optional[Mapping[str, float]] = None, seed: int = 0,
                  budget: Optional[MultistartConfig] = None) -> SuiteResults:
        results: SuiteResults = {}
        for op in corpus:
            results[op.name] = SuiteRunner.run_operator(op, window, tolerances, seed, budget)
        lemma = StructureChecker.lemma_bas_suite(corpus, window, 1e-9, seed=seed)
        lemma.seed = seed
        results[CORPUS_ENTRY] = [lemma]
        return results

    @staticmethod
    def write_results(results: SuiteResults, out_dir: Path) -> List[Path]:
        """Un archivo por chequeo: <out>/<operador>/<chequeo>.json."""
        written = []
        for name, reports in results.items():
            for report in reports:
                written.append(report.write_json(Path(out_dir) / name / f"{report.check}.json"))
        return written

    @staticmethod
    def load_golden(path: Path) -> Dict[str, Dict[str, str]]:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"Archivo dorado inválido {path}: {e}") from e
        if not isinstance(data, dict):
            raise InputError("El archivo dorado debe ser un objeto operador → chequeo → estado")
        return data

    @staticmethod
    def compare_golden(results: SuiteResults, golden: Mapping[str, Mapping[str, str]]) -> List[str]:
        """Lista de discrepancias 'operador/chequeo: esperado X, obtenido Y'."""
        mismatches = []
        for name, reports in results.items():
            expected = golden.get(name)
            if expected is None:
                logger.warning("suite: '%s' no tiene resultados dorados", name)
                continue
            got = {r.check: r.status for r in reports}
            for check, status in sorted(expected.items()):
                if got.get(check) != status:
                    mismatches.append(f"{name}/{check}: esperado {status}, obtenido {got.get(check)}")
        return mismatches


def run_suite(corpus: Sequence[ZooOperator], window: Optional[Box] = None,
              tolerances: Optional[Mapping[str, float]] = None, seed: int = 0,
              budget: Optional[MultistartConfig] = None) -> SuiteResults:
    return SuiteRunner.run_suite(corpus, window, tolerances, seed, budget)


def compare_golden(results: SuiteResults, golden: Mapping[str, Mapping[str, str]]) -> List[str]:
    return SuiteRunner.compare_golden(results, golden)
