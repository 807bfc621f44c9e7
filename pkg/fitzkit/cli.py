# ---------------------------------------------------
# Proyecto: fitzkit (fzk)
# Año: 2026
# Licencia: MIT License
# ---------------------------------------------------

"""
Punto de entrada de la CLI de fitzkit (`fzk`).

Comandos disponibles:
- `fzk eval-phi / eval-s / conjugate`: evalúa φ, S o sus conjugadas en un punto.
- `fzk polar-test / polar-decide`: polar monótono de un grafo finito.
- `fzk premax / cond-as / family-check / structure`: chequeos con reporte JSON.
- `fzk enlargement / br-search`: agrandamiento T^ε y búsqueda BR restringida.
- `fzk suite`: corpus completo contra los resultados dorados.
- `fzk report-diff`: compara reportes o directorios de reportes.

Códigos de salida: 0 pasa, 1 propiedad violada, 2 error de entrada, 3 fallo del solver.

Ejemplo de uso:
    fzk polar-decide --op twopoint.json --window -2:2:9
        → Reporte con el certificado más negativo de la ventana, ((−2,0),(0,−2)),
          y código de salida 1.
"""

import logging
from pathlib import Path
from typing import Callable, List, Optional

import typer

from fitzkit.convexfn.conjugation import conjugate as conjugate_rep
from fitzkit.convexfn.representations import encode_extended, evaluate_any
from fitzkit.core.graph_sampler import covering_sample, membership, pair_window
from fitzkit.core.operator_spec import FiniteGraph
from fitzkit.core.pair_space import Box, PairPoint, duality
from fitzkit.enlarge.br_search import BRQuery, BRSearch
from fitzkit.enlarge.enlargement import Enlargement
from fitzkit.fitz.family_checker import FamilyChecker
from fitzkit.fitz.fitzpatrick import ExactFitzpatrick, phi_of, s_of
from fitzkit.optim.multistart import MultistartConfig
from fitzkit.polar.polar_manager import PolarManager
from fitzkit.reports.check_report import CheckReport, witness
from fitzkit.reports.grid_dump import dump_grid
from fitzkit.reports.report_diff import report_diff as diff_reports
from fitzkit.utils.errors import EXIT_CODES, FitzkitError, InputError, RefusalError, exit_code_for
from fitzkit.utils.settings import Settings
from fitzkit.zoo.operator_builder import OperatorBuilder, ZooOperator
from fitzkit.zoo.structure_checker import StructureChecker, default_window
from fitzkit.zoo.suite_runner import SuiteRunner

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="fzk",
    help="fitzkit: funciones de Fitzpatrick, polares monótonos y agrandamientos de operadores monótonos.",
)

OP_HELP = "Archivo JSON con el OperatorSpec"
WINDOW_HELP = "Ventana de pares 'lo:hi:res' (cubo en dimensión 2n)"
AT_HELP = "Punto 'x..,xs..' separado por comas"
EVAL_TOL_HELP = "Tolerancia de pertenencia para marcar si --at está en el grafo"
EVAL_OUT_HELP = "Directorio donde escribir el reporte de la evaluación"


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Muestra el log de depuración")):
    """Configura el logging de la CLI."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _guard(body: Callable[[], int]) -> None:
    """Ejecuta el cuerpo del comando y traduce errores a códigos de salida."""
    try:
        code = body()
    except FitzkitError as e:
        typer.echo(f" Error: {e}", err=True)
        raise typer.Exit(code=exit_code_for(e))
    raise typer.Exit(code=code)


def parse_window(text: Optional[str], dim: int) -> Box:
    if text is None:
        return default_window(dim)
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"Ventana inválida '{text}': se espera 'lo:hi:res'")
    try:
        lo, hi, res = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise InputError(f"Ventana inválida '{text}': {e}") from e
    return Box.cube(2 * dim, lo, hi, res)


def parse_point(text: Optional[str], dim: int) -> PairPoint:
    if text is None:
        raise InputError("Falta el punto --at")
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError as e:
        raise InputError(f"Punto inválido '{text}': {e}") from e
    if len(values) != 2 * dim:
        raise InputError(f"El punto debe tener {2 * dim} coordenadas, se recibieron {len(values)}")
    return PairPoint.from_flat(values)


def format_value(value: float) -> str:
    encoded = encode_extended(value)
    return encoded if isinstance(encoded, str) else f"{encoded:.12g}"


def _load(op: Optional[Path]) -> ZooOperator:
    if op is None:
        raise InputError("Falta el operador --op")
    return OperatorBuilder.load_operator(op)


def _budget(settings: Settings, seed: int, starts: Optional[int]) -> MultistartConfig:
    ms = settings.multistart
    return MultistartConfig(
        starts=int(starts if starts is not None else ms["starts"]),
        seed=seed,
        max_iterations=int(ms["max_iterations"]),
        step_tolerance=float(ms["step_tolerance"]),
    )


def _emit(reports: List[CheckReport], out: Optional[Path], settings: Settings, seed: int) -> int:
    """Escribe los reportes, imprime el resumen y devuelve el código de salida."""
    out_dir = out or settings.out_dir
    code = EXIT_CODES["pass"]
    for report in reports:
        report.seed = seed
        path = report.write_json(out_dir / f"{report.check}.json")
        typer.echo(f"{report.check} [{report.operator}]: {report.status} → {path}")
        if report.status == "fail":
            code = EXIT_CODES["violation"]
        elif report.status == "refused":
            code = max(code, EXIT_CODES["input"])
    return code


def _phi_rep(zoo: ZooOperator, window: Box):
    """φ cerrada si existe; si no, φ del grafo muestreado en la ventana."""
    if isinstance(zoo.spec, FiniteGraph):
        return phi_of(zoo.spec)
    exact = ExactFitzpatrick.for_spec(zoo.spec)
    if exact is not None:
        return exact
    return phi_of(covering_sample(zoo.spec, window))


def _evaluate_command(check: str, build, op, window, at, dump_grid_path,
                      tol: Optional[float], seed: Optional[int], out: Optional[Path]) -> int:
    settings = Settings.load()
    s = settings.seed if seed is None else seed
    t = settings.tolerances["membership"] if tol is None else tol
    zoo = _load(op)
    w = parse_window(window, zoo.dim)
    h = build(zoo, w)
    details = {}
    if dump_grid_path is not None:
        details["grid_dump"] = str(dump_grid(h, w, dump_grid_path))
    if at is not None:
        z = parse_point(at, zoo.dim)
        value = evaluate_any(h, z)
        typer.echo(format_value(value))
        details.update(at=z, value=value, duality=duality(z),
                       on_graph=membership(zoo.spec, z, t))
    if out is None:
        return EXIT_CODES["pass"]
    report = CheckReport(check, zoo.name, "pass", window=w, tolerances={"membership": t}, details=details)
    return _emit([report], out, settings, s)


@app.command("eval-phi")
def eval_phi(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    at: str = typer.Option(None, "--at", help=AT_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    dump_grid_path: Path = typer.Option(None, "--dump-grid", help="CSV con φ en la grilla"),
    tol: float = typer.Option(None, "--tol", help=EVAL_TOL_HELP),
    seed: int = typer.Option(None, "--seed", help="Semilla registrada en el reporte"),
    out: Path = typer.Option(None, "--out", help=EVAL_OUT_HELP),
):
    """Evalúa la función de Fitzpatrick φ_T (cerrada o del grafo muestreado)."""
    _guard(lambda: _evaluate_command("eval-phi", _phi_rep, op, window, at, dump_grid_path, tol, seed, out))


@app.command("eval-s")
def eval_s(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    at: str = typer.Option(None, "--at", help=AT_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    dump_grid_path: Path = typer.Option(None, "--dump-grid", help="CSV con S en la grilla"),
    tol: float = typer.Option(None, "--tol", help=EVAL_TOL_HELP),
    seed: int = typer.Option(None, "--seed", help="Semilla registrada en el reporte"),
    out: Path = typer.Option(None, "--out", help=EVAL_OUT_HELP),
):
    """Evalúa la función S = cl conv(π + δ_T) del grafo muestreado."""
    _guard(lambda: _evaluate_command(
        "eval-s", lambda zoo, w: s_of(covering_sample(zoo.spec, w)),
        op, window, at, dump_grid_path, tol, seed, out,
    ))


@app.command()
def conjugate(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    of: str = typer.Option("s", "--of", help="Función a conjugar: 'phi' o 's'"),
    at: str = typer.Option(None, "--at", help=AT_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    dump_grid_path: Path = typer.Option(None, "--dump-grid", help="CSV con la conjugada en la grilla"),
    tol: float = typer.Option(None, "--tol", help=EVAL_TOL_HELP),
    seed: int = typer.Option(None, "--seed", help="Semilla registrada en el reporte"),
    out: Path = typer.Option(None, "--out", help=EVAL_OUT_HELP),
):
    """
    Evalúa la conjugada de φ o de S del grafo muestreado.

    Ejemplo:
        fzk conjugate --op abs.json --of s --at 0,1
    """
    if of not in ("phi", "s"):
        typer.echo(f" Error: --of debe ser 'phi' o 's', se recibió '{of}'", err=True)
        raise typer.Exit(code=EXIT_CODES["input"])

    def build(zoo: ZooOperator, w: Box):
        g = covering_sample(zoo.spec, w)
        return conjugate_rep(phi_of(g) if of == "phi" else s_of(g))

    _guard(lambda: _evaluate_command("conjugate", build, op, window, at, dump_grid_path, tol, seed, out))


@app.command("polar-test")
def polar_test(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    at: str = typer.Option(None, "--at", help=AT_HELP),
):
    """Indica si un punto está en el polar monótono de un grafo finito."""

    def body() -> int:
        zoo = _load(op)
        if not isinstance(zoo.spec, FiniteGraph):
            raise InputError("polar-test requiere un operador finite_graph")
        z = parse_point(at, zoo.dim)
        typer.echo("true" if PolarManager.polar_contains(zoo.spec, z) else "false")
        return EXIT_CODES["pass"]

    _guard(body)


@app.command("polar-decide")
def polar_decide(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    seed: int = typer.Option(None, "--seed", help="Semilla del multistart"),
    starts: int = typer.Option(None, "--starts", help="Número de arranques sembrados"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """
    Decide (con búsqueda acotada) si el polar monótono del grafo es monótono.
    Un certificado de no monotonía produce código de salida 1.
    """

    def body() -> int:
        settings = Settings.load()
        s = settings.seed if seed is None else seed
        zoo = _load(op)
        if not isinstance(zoo.spec, FiniteGraph):
            raise InputError("polar-decide requiere un operador finite_graph")
        decision = PolarManager.polar_monotone_decide(
            zoo.spec, parse_window(window, zoo.dim), _budget(settings, s, starts),
            float(settings.multistart["penalty"]),
        )
        typer.echo(f"veredicto: {decision.verdict}")
        return _emit([decision.to_check_report(zoo.name, s)], out, settings, s)

    _guard(body)


@app.command()
def premax(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    tol: float = typer.Option(None, "--tol", help="Tolerancia (por defecto la de grilla)"),
    seed: int = typer.Option(None, "--seed", help="Semilla del pulido multistart"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """Prueba φ_T ≥ π en la ventana (pre-maximalidad) para operadores con φ cerrada."""

    def body() -> int:
        settings = Settings.load()
        s = settings.seed if seed is None else seed
        zoo = _load(op)
        report = PolarManager.phi_ge_pi_check(
            zoo.spec, parse_window(window, zoo.dim),
            settings.tolerances["grid"] if tol is None else tol,
            _budget(settings, s, 8), zoo.name,
        )
        return _emit([report], out, settings, s)

    _guard(body)


@app.command("cond-as")
def cond_as(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    tol: float = typer.Option(None, "--tol", help="Tolerancia (por defecto la de grilla)"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """Verifica (S_T)*(x*, x) ≥ ⟨x*, x⟩ por dos caminos de cálculo."""

    def body() -> int:
        settings = Settings.load()
        zoo = _load(op)
        if not zoo.maximal:
            logger.warning("'%s' no está etiquetado como maximal", zoo.name)
        report = PolarManager.cond_as_check(
            zoo.spec, parse_window(window, zoo.dim),
            settings.tolerances["grid"] if tol is None else tol, operator=zoo.name,
        )
        return _emit([report], out, settings, settings.seed)

    _guard(body)


@app.command()
def enlargement(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    eps: float = typer.Option(0.0, "--eps", help="ε ≥ 0"),
    at: str = typer.Option(None, "--at", help=AT_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    tol: float = typer.Option(None, "--tol", help="Tolerancia del chequeo T⁰ = T"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """
    Con --at: imprime el ínfimo del agrandamiento y si el punto está en T^ε.
    Sin --at: chequeo T⁰ = T en la grilla de la ventana.
    """

    def body() -> int:
        settings = Settings.load()
        zoo = _load(op)
        w = parse_window(window, zoo.dim)
        if at is not None:
            z = parse_point(at, zoo.dim)
            gap = Enlargement.te_gap(zoo.spec, z, w)
            contained = Enlargement.te_contains(zoo.spec, eps, z, w)
            typer.echo(f"ínfimo: {format_value(gap.value)} (exacto: {str(gap.exact).lower()})")
            typer.echo(f"en T^ε: {str(contained).lower()}")
            return EXIT_CODES["pass"]
        report = Enlargement.t0_check(zoo.spec, w, settings.tolerances["lp"] if tol is None else tol, zoo.name)
        return _emit([report], out, settings, settings.seed)

    _guard(body)


@app.command("br-search")
def br_search(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    at: str = typer.Option(None, "--at", help="Consulta (x, x*) como 'x..,xs..'"),
    eps: float = typer.Option(..., "--eps", help="ε ≥ 0"),
    eps_tilde: float = typer.Option(..., "--eps-tilde", help="ε̃ > ε"),
    lam: float = typer.Option(1.0, "--lambda", help="λ > 0"),
    window: str = typer.Option(None, "--window", help="Ventana del barrido (por defecto centrada en la consulta)"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """
    Busca un punto del grafo a distancia < λ (primal) y < ε̃/λ (dual) de una
    consulta en T^ε.

    Ejemplo:
        fzk br-search --op abs.json --at 1,0 --eps 1 --eps-tilde 1.1 --lambda 1
    """

    def body() -> int:
        settings = Settings.load()
        zoo = _load(op)
        z = parse_point(at, zoo.dim)
        q = BRQuery(z.x, z.xs, eps, eps_tilde, lam)
        w = parse_window(window, zoo.dim) if window is not None else None
        try:
            result = BRSearch.br_search(zoo.spec, q, w)
        except RefusalError as e:
            report = CheckReport("br-search", zoo.name, "refused", details={"query": q.to_dict(), "reason": str(e)})
            _emit([report], out, settings, settings.seed)
            raise
        details = {"query": q.to_dict(), "result": result.to_dict()}
        witnesses = [] if result.satisfied else [witness("br_unsatisfied", **result.to_dict())]
        report = CheckReport(
            "br-search", zoo.name, "pass" if result.satisfied else "fail",
            window=w, witnesses=witnesses, details=details,
        )
        typer.echo(f"estrategia: {result.strategy.value}, primal {format_value(result.primal_residual)}, "
                   f"dual {format_value(result.dual_residual)}")
        return _emit([report], out, settings, settings.seed)

    _guard(body)


@app.command("family-check")
def family_check(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    of: str = typer.Option("phi", "--of", help="Función a probar: 'phi' o 's'"),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    tol: float = typer.Option(None, "--tol", help="Tolerancia (por defecto la de LP)"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """Pertenencia a la familia de Fitzpatrick e identidad φ = 𝒥 S del grafo muestreado."""

    def body() -> int:
        settings = Settings.load()
        zoo = _load(op)
        w = pair_window(zoo.dim, parse_window(window, zoo.dim))
        t = settings.tolerances["lp"] if tol is None else tol
        g = covering_sample(zoo.spec, w)
        h = phi_of(g) if of == "phi" else s_of(g)
        family = FamilyChecker.in_family_check(h, zoo.spec, w, t)
        points = [PairPoint.from_flat(r) for r in w.grid()]
        reports = [
            family.to_check_report("family", zoo.name, w, {}),
            FamilyChecker.bs_identity_check(g, points, t, zoo.name),
            FamilyChecker.family_order_check(g, [phi_of(g), s_of(g)], points, t, zoo.name),
        ]
        return _emit(reports, out, settings, settings.seed)

    if of not in ("phi", "s"):
        typer.echo(f" Error: --of debe ser 'phi' o 's', se recibió '{of}'", err=True)
        raise typer.Exit(code=EXIT_CODES["input"])
    _guard(body)


@app.command()
def structure(
    op: Path = typer.Option(None, "--op", help=OP_HELP),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    tol: float = typer.Option(None, "--tol", help="Tolerancia de pertenencia"),
    trials: int = typer.Option(200, "--trials", help="Pares de puntos para la prueba de convexidad"),
    seed: int = typer.Option(None, "--seed", help="Semilla del muestreo de pares"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """Convexidad del grafo, ajuste afín y maximalidad en la ventana."""

    def body() -> int:
        settings = Settings.load()
        s = settings.seed if seed is None else seed
        zoo = _load(op)
        w = parse_window(window, zoo.dim)
        t = settings.tolerances["lp"] if tol is None else tol
        fit = StructureChecker.affine_fit(covering_sample(zoo.spec, w), t)
        typer.echo(f"residuo afín: {format_value(fit.residual)}")
        reports = [
            SuiteRunner.convexity_report(zoo, w, trials, s),
            StructureChecker.maximality_check(zoo.spec, w, t, zoo.name),
        ]
        reports[0].details["affine_residual"] = fit.residual
        return _emit(reports, out, settings, s)

    _guard(body)


@app.command()
def suite(
    corpus: Path = typer.Option(None, "--corpus", help="Manifiesto JSON del corpus (por defecto FITZKIT_CORPUS)"),
    golden: Path = typer.Option(None, "--golden", help="Resultados dorados"),
    window: str = typer.Option(None, "--window", help=WINDOW_HELP),
    tol: float = typer.Option(None, "--tol", help="Tolerancia de LP de los chequeos (por defecto la de configuración)"),
    seed: int = typer.Option(None, "--seed", help="Semilla"),
    starts: int = typer.Option(None, "--starts", help="Arranques del multistart (por defecto los de configuración)"),
    out: Path = typer.Option(None, "--out", help="Directorio de reportes"),
):
    """
    Corre todos los chequeos sobre el corpus y los compara con los resultados
    dorados; código 0 si todo coincide.
    """

    def body() -> int:
        settings = Settings.load()
        s = settings.seed if seed is None else seed
        ops = OperatorBuilder.load_corpus(corpus or settings.corpus_path)
        w = None
        if window is not None:
            dims = {op.dim for op in ops}
            if len(dims) != 1:
                raise InputError("--window solo se admite para corpus de una única dimensión")
            w = parse_window(window, dims.pop())
        tolerances = dict(settings.tolerances)
        if tol is not None:
            tolerances["lp"] = tol
        results = SuiteRunner.run_suite(ops, w, tolerances, s, _budget(settings, s, starts))
        SuiteRunner.write_results(results, out or settings.out_dir)
        for name, reports in results.items():
            typer.echo(f"{name}: " + ", ".join(f"{r.check}={r.status}" for r in reports))
        mismatches = SuiteRunner.compare_golden(results, SuiteRunner.load_golden(golden or settings.golden_path))
        for line in mismatches:
            typer.echo(f" Discrepancia: {line}", err=True)
        return EXIT_CODES["violation"] if mismatches else EXIT_CODES["pass"]

    _guard(body)


@app.command("report-diff")
def report_diff(
    a: Path = typer.Argument(..., help="Reporte (o directorio) A"),
    b: Path = typer.Argument(..., help="Reporte (o directorio) B"),
    verdict_only: bool = typer.Option(False, "--verdict-only", help="Compara solo check, operador y estado"),
):
    """Compara dos reportes campo a campo ignorando el tiempo de pared."""

    def body() -> int:
        diff = diff_reports(a, b, verdict_only)
        typer.echo(diff.render())
        return diff.exit_code

    _guard(body)


if __name__ == "__main__":
    app()
