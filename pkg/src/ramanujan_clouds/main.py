"""CLI entry point for the Ramanujan expansions toolkit."""

import csv
import dataclasses
import logging
import random
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

import typer
from pydantic import ValidationError

from ramanujan_clouds import __version__
from ramanujan_clouds.arith import TabulatedFunction
from ramanujan_clouds.clouds import (
    canonical_coefficient,
    cm_cloud_coefficient,
    euler_selberg_value,
    factorized_series_value,
    hildebrand_coefficient,
    hildebrand_reconstruct,
    null_cloud_test,
    opacity_core,
    reconstruct_from_core,
    selberg_decompose,
    series_base,
)
from ramanujan_clouds.coefficients import conductors, random_finite_spec
from ramanujan_clouds.config import RunConfig, ToleranceConfig, configure, get_settings, load_settings
from ramanujan_clouds.exceptions import DomainError, RamanujanToolkitError
from ramanujan_clouds.lab import (
    ContractionExperiment,
    a2_experiment,
    converse_limit_demo,
    sf_dirichlet,
    squarefree_stats,
    synthetic_step_source,
)
from ramanujan_clouds.models import (
    ClassificationReport,
    Envelope,
    ErrorBody,
    ErrorDocument,
    SpecDocument,
    TraceDocument,
    load_function,
    load_spec,
    scalar_pair,
)
from ramanujan_clouds.ramanujan import Method, build_table, ramanujan_sum
from ramanujan_clouds.scalars import Scalar, scalars_equal
from ramanujan_clouds.series import (
    Identity,
    SeriesKind,
    SeriesTrace,
    estimate_limit,
    exact_sum,
    finiteness_check,
    geometric_schedule,
    identity_residual,
    is_provably_finite,
    random_identity_params,
    series_params,
)

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="ramanujan-clouds",
    help="Ramanujan expansions toolkit - sums, coefficients, series, clouds and convergence experiments.",
    add_completion=False,
)
lab_app = typer.Typer(help="Numerical convergence experiments.", add_completion=False)
app.add_typer(lab_app, name="lab")


def setup_logging(verbose: bool = False) -> None:
    """Configure logging for the application.

    Log records go to stderr so that stdout carries only the output document.

    Args:
        verbose: If True, set log level to DEBUG.

    """
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


@dataclass
class Output:
    """Result of one command: a JSON payload and, for tabular results, CSV rows."""

    result: dict[str, Any]
    header: tuple[str, ...] = ()
    rows: list[Sequence[Any]] = field(default_factory=list)


FormatOverride = Annotated[
    str | None,
    typer.Option("--format", "-f", help="Output document format: json or csv. Overrides the global option."),
]
NumericOverride = Annotated[
    str | None,
    typer.Option("--numeric", help="exact or float. Overrides the global option."),
]
SeedOverride = Annotated[
    int | None,
    typer.Option("--seed", help="Seed of random generators. Overrides the global option."),
]


def _run_config(
    ctx: typer.Context,
    output_format: str | None = None,
    numeric: str | None = None,
    seed: int | None = None,
) -> RunConfig:
    """Global run options with the options given after the command applied on top."""
    run = ctx.obj if isinstance(ctx.obj, RunConfig) else RunConfig()
    update = {
        key: value
        for key, value in (("output_format", output_format), ("numeric", numeric), ("seed", seed))
        if value is not None
    }
    if not update:
        return run
    try:
        return RunConfig.model_validate({**run.model_dump(), **update})
    except ValidationError as e:
        raise typer.BadParameter(e.errors()[0]["msg"]) from e


def _emit(run: RunConfig, exercises: str, output: Output) -> None:
    if run.output_format == "csv" and output.header:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        sys.stdout.write(f"# ramanujan-clouds {__version__} numeric={run.numeric} exercises={exercises}\n")
        writer.writerow(output.header)
        writer.writerows(output.rows)
        return
    envelope = Envelope(
        toolkit_version=__version__,
        numeric_mode=run.numeric,
        exercises=exercises,
        seed=run.seed,
        result=output.result,
    )
    typer.echo(envelope.model_dump_json(indent=2))


def _execute(run: RunConfig, exercises: str, compute: Callable[[RunConfig], Output]) -> None:
    """Run ``compute`` and map toolkit errors to exit status 2, anything else to 1."""
    try:
        output = compute(run)
    except RamanujanToolkitError as e:
        logger.error("%s: %s", type(e).__name__, e)
        document = ErrorDocument(
            toolkit_version=__version__,
            numeric_mode=run.numeric,
            exercises=exercises,
            seed=run.seed,
            error=ErrorBody(type=type(e).__name__, condition=e.condition, message=str(e)),
        )
        typer.echo(document.model_dump_json(indent=2))
        raise typer.Exit(code=2) from e
    except Exception as e:
        logger.exception("Unexpected error")
        raise typer.Exit(code=1) from e
    _emit(run, exercises, output)


def _residual(value: float | Fraction) -> float | str:
    return str(value) if isinstance(value, Fraction) else float(value)


def _trace_rows(trace: SeriesTrace, label: str | None = None) -> list[Sequence[Any]]:
    rows: list[Sequence[Any]] = []
    for x, value in trace.checkpoints:
        z = complex(value)
        rows.append((label, x, z.real, z.imag) if label else (x, z.real, z.imag))
    return rows


def _parse_range(raw: str) -> list[int]:
    """``start:stop:step`` with ``stop`` included."""
    try:
        parts = [int(float(part)) for part in raw.split(":")]
    except ValueError as e:
        raise DomainError(f"invalid range {raw!r}: {e}", condition="range") from e
    match parts:
        case [stop]:
            return list(range(1, stop + 1))
        case [start, stop]:
            return list(range(start, stop + 1))
        case [start, stop, step] if step > 0:
            return list(range(start, stop + 1, step))
        case _:
            raise DomainError(f"invalid range {raw!r}", condition="range")


@app.callback()
def main(
    ctx: typer.Context,
    numeric: Annotated[str, typer.Option("--numeric", help="exact (rationals) or float (complex values).")] = "exact",
    output_format: Annotated[str, typer.Option("--format", "-f", help="Output document format: json or csv.")] = "json",
    seed: Annotated[int, typer.Option("--seed", help="Seed of random generators.")] = 0,
    tolerance: Annotated[
        float | None,
        typer.Option("--tolerance", help="Override every equality tolerance.", min=0.0),
    ] = None,
    config: Annotated[
        Path | None,
        typer.Option(
            "--config",
            "-c",
            help="Path to YAML configuration file.",
            exists=True,
            dir_okay=False,
            resolve_path=True,
        ),
    ] = None,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Enable verbose debug logging.")] = False,
) -> None:
    """Compute with Ramanujan sums, Ramanujan series and their coefficients."""
    setup_logging(verbose=verbose)
    settings = load_settings(config)
    try:
        ctx.obj = RunConfig.model_validate(
            {"output_format": output_format, "numeric": numeric, "tolerance": tolerance, "seed": seed},
        )
        if tolerance is not None:
            tolerances = ToleranceConfig(coefficient=tolerance, identity=tolerance, cloud=tolerance)
            settings = settings.model_copy(update={"tolerances": tolerances})
    except ValidationError as e:
        raise typer.BadParameter(e.errors()[0]["msg"]) from e
    configure(settings)
    logger.debug("Run configuration: %s", ctx.obj)


@app.command()
def ramsum(
    ctx: typer.Context,
    q: Annotated[int, typer.Argument(help="Modulus q, or the largest modulus with --table.")],
    a: Annotated[int, typer.Argument(help="Argument a, or the largest argument with --table.")],
    table: Annotated[bool, typer.Option("--table", help="Tabulate c_q(a) for every q <= Q and a <= A.")] = False,
    method: Annotated[str, typer.Option("--method", help="holder or kluyver.")] = "holder",
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Evaluate the Ramanujan sum c_q(a)."""

    def compute(_: RunConfig) -> Output:
        if method not in ("holder", "kluyver"):
            raise DomainError(f"unknown method {method!r}", condition="method")
        chosen: Method = "kluyver" if method == "kluyver" else "holder"
        if not table:
            value = ramanujan_sum(q, a, chosen)
            return Output({"q": q, "a": a, "value": value}, ("q", "a", "value"), [(q, a, value)])
        rows = build_table(q, a).csv_rows()
        return Output({"q_max": q, "a_max": a, "rows": rows}, ("q", "a", "value"), list(rows))

    _execute(_run_config(ctx, output_format, numeric, seed), "Ramanujan sums", compute)


@app.command()
def classify(
    ctx: typer.Context,
    spec: Annotated[Path, typer.Argument(help="Coefficient JSON file.", exists=True, dir_okay=False)],
    finiteness_budget: Annotated[
        int | None,
        typer.Option("--finiteness-budget", help="Also probe the finiteness criterion up to this x."),
    ] = None,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Classify the listed primes and report N(G) and N_T(G)."""

    def compute(run: RunConfig) -> Output:
        g = load_spec(spec, exact=run.exact)
        result: dict[str, Any] = ClassificationReport.from_conductors(conductors(g)).model_dump()
        if finiteness_budget is not None:
            report = finiteness_check(g, finiteness_budget)
            result["finiteness"] = {
                "consistent": report.consistent,
                "notes": list(report.notes),
                "traces": [TraceDocument.from_trace(t).model_dump() for t in report.traces],
            }
        return Output(result)

    _execute(_run_config(ctx, output_format, numeric, seed), "Ramanujan and transparency conductors", compute)


@app.command()
def series(
    ctx: typer.Context,
    spec: Annotated[Path, typer.Option("--spec", help="Coefficient JSON file.", exists=True, dir_okay=False)],
    xs: Annotated[str, typer.Option("--xs", help="Checkpoints as start:stop:step, stop included.")],
    kind: Annotated[SeriesKind, typer.Option("--kind", help="Series family.")] = SeriesKind.R,
    a: Annotated[int, typer.Option("--a", help="Argument of R and F.")] = 1,
    b: Annotated[int, typer.Option("--b", help="Coprimality modulus of S and F.")] = 1,
    c: Annotated[int, typer.Option("--c", help="Shift of F.")] = 1,
    d: Annotated[int, typer.Option("--d", help="Shift of L.")] = 1,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Partial sums of a Ramanujan-type series with a convergence verdict."""

    def compute(run: RunConfig) -> Output:
        g = load_spec(spec, exact=run.exact)
        trace = estimate_limit(kind, g, series_params(kind, a=a, b=b, c=c, d=d), _parse_range(xs))
        return Output(TraceDocument.from_trace(trace).model_dump(), ("x", "re", "im"), _trace_rows(trace))

    _execute(_run_config(ctx, output_format, numeric, seed), "truncated Ramanujan-type series", compute)


@app.command("verify-identities")
def verify_identities(
    ctx: typer.Context,
    spec: Annotated[
        Path | None,
        typer.Option("--spec", help="Coefficient JSON file; a seeded random one when omitted.", dir_okay=False),
    ] = None,
    xmax: Annotated[int, typer.Option("--xmax", help="Check every integer x <= XMAX.")] = 300,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Check the partial-sum identities between the R, S, L and F series."""

    def compute(run: RunConfig) -> Output:
        rng = random.Random(run.seed)
        g = load_spec(spec, exact=run.exact) if spec else random_finite_spec(rng, exact=run.exact)
        xs = list(range(1, xmax + 1))
        entries: list[dict[str, Any]] = []
        rows: list[Sequence[Any]] = []
        for identity in Identity:
            try:
                params = random_identity_params(identity, g, rng)
                residual = identity_residual(identity, g, params, xs)
            except RamanujanToolkitError as e:
                entries.append({"identity": identity.value, "skipped": e.condition, "message": str(e)})
                rows.append((identity.value, "", "skipped"))
                continue
            encoded = _residual(residual)
            entries.append(
                {
                    "identity": identity.value,
                    "params": dataclasses.asdict(params),
                    "residual": encoded,
                },
            )
            rows.append((identity.value, encoded, "checked"))
        return Output(
            {"coefficient": SpecDocument.from_spec(g).model_dump(), "xmax": xmax, "identities": entries},
            ("identity", "residual", "status"),
            rows,
        )

    run = _run_config(ctx, output_format, numeric, seed)
    _execute(run, "partial-sum identities between R, S and L series", compute)


def _reproduces(f: TabulatedFunction, value: Callable[[int], Scalar], tol: float) -> list[int]:
    return [n for n in range(1, f.a_max + 1) if not scalars_equal(value(n), f(n), tol)]


@app.command()
def canonical(
    ctx: typer.Context,
    function: Annotated[Path, typer.Argument(help="Tabulated function JSON file.", exists=True, dir_okay=False)],
    qmax: Annotated[int, typer.Option("--qmax", help="Largest modulus of the construction.")] = 200,
    completely_multiplicative: Annotated[
        bool,
        typer.Option("--completely-multiplicative", help="Build the completely multiplicative cloud member instead."),
    ] = False,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Canonical Ramanujan coefficient of a multiplicative function."""

    def compute(run: RunConfig) -> Output:
        f = load_function(function, exact=run.exact).truncate(qmax)
        tol = 0.0 if run.exact else get_settings().tolerances.cloud
        if completely_multiplicative:
            cloud = cm_cloud_coefficient(f)
            result: dict[str, Any] = {"empty": cloud.empty, "reason": cloud.reason}
            if cloud.coefficient is not None:
                result["coefficient"] = SpecDocument.from_spec(cloud.coefficient).model_dump()
            if cloud.trace is not None:
                result["trace"] = TraceDocument.from_trace(cloud.trace).model_dump()
            return Output(result)
        g = canonical_coefficient(f, qmax)
        mismatches = _reproduces(f, lambda n: exact_sum(SeriesKind.R, g, series_params(SeriesKind.R, a=n)), tol)
        return Output({"coefficient": SpecDocument.from_spec(g).model_dump(), "mismatches": mismatches})

    label = "completely multiplicative cloud" if completely_multiplicative else "canonical Ramanujan coefficient"
    _execute(_run_config(ctx, output_format, numeric, seed), label, compute)


@app.command()
def hildebrand(
    ctx: typer.Context,
    function: Annotated[Path, typer.Argument(help="Tabulated function JSON file.", exists=True, dir_okay=False)],
    qmax: Annotated[int, typer.Option("--qmax", help="Largest q of the construction.")] = 100,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Hildebrand coefficient of an arbitrary function, on square-full arguments."""

    def compute(run: RunConfig) -> Output:
        f = load_function(function, exact=run.exact).truncate(qmax)
        hi = hildebrand_coefficient(f, qmax)
        tol = 0.0 if run.exact else get_settings().tolerances.cloud
        mismatches = _reproduces(f, lambda n: hildebrand_reconstruct(hi, n), tol)
        encoded = {key: scalar_pair(value) for key, value in sorted(hi.items())}
        rows = [(key, *pair) for key, pair in encoded.items()]
        return Output(
            {"coefficient": {str(key): pair for key, pair in encoded.items()}, "mismatches": mismatches},
            ("q_rad_q", "re", "im"),
            rows,
        )

    _execute(_run_config(ctx, output_format, numeric, seed), "Hildebrand finite expansion", compute)


@app.command("cloud-check")
def cloud_check(
    ctx: typer.Context,
    spec: Annotated[Path, typer.Argument(help="Coefficient JSON file.", exists=True, dir_okay=False)],
    xmax: Annotated[int, typer.Option("--xmax", help="Scan budget when the coprime sum is not finite.")] = 10_000,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Decide whether the coefficient lies in the null cloud."""

    def compute(run: RunConfig) -> Output:
        report = null_cloud_test(load_spec(spec, exact=run.exact), xmax)
        return Output(
            {
                "verdict": report.verdict.value,
                "n": report.n,
                "coprime_value": None if report.coprime_value is None else scalar_pair(report.coprime_value),
                "heuristic": report.heuristic,
                "consistent": report.consistent,
                "reason": report.reason,
                "samples": [(a, scalar_pair(v)) for a, v in report.samples],
            },
        )

    _execute(_run_config(ctx, output_format, numeric, seed), "null cloud criterion", compute)


@app.command()
def selberg(
    ctx: typer.Context,
    function: Annotated[Path, typer.Argument(help="Tabulated function JSON file.", exists=True, dir_okay=False)],
    core: Annotated[
        Path | None,
        typer.Option("--core", help="Coefficient whose opacity core selects the cloud member.", dir_okay=False),
    ] = None,
    n: Annotated[int | None, typer.Option("--n", help="Conductor bound N for the reconstruction.")] = None,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Selberg factorization of a semi-multiplicative function, optionally rebuilt from an opacity core."""

    def compute(run: RunConfig) -> Output:
        f = load_function(function, exact=run.exact)
        form = selberg_decompose(f)
        result: dict[str, Any] = {
            "a_f": form.a_f,
            "c": scalar_pair(form.c),
            "m": [scalar_pair(v) for v in form.m.values],
        }
        if core is not None:
            core_spec = load_spec(core, exact=run.exact)
            h = opacity_core(core_spec, f.a_max)
            rebuilt = reconstruct_from_core(form, h, n if n is not None else conductors(core_spec).n, f.a_max)
            result["reconstruction"] = {
                "coefficient": SpecDocument.from_spec(rebuilt.coefficient).model_dump(),
                "analytic_checks": rebuilt.analytic_checks,
                "relative_simply_bad": list(rebuilt.relative_simply_bad),
                "reproduces_domain": rebuilt.reproduces_domain,
                "notes": list(rebuilt.notes),
            }
        return Output(result)

    run = _run_config(ctx, output_format, numeric, seed)
    _execute(run, "Selberg factorization of semi-multiplicative functions", compute)


@app.command("euler-selberg")
def euler_selberg(
    ctx: typer.Context,
    spec: Annotated[Path, typer.Argument(help="Coefficient JSON file.", exists=True, dir_okay=False)],
    a: Annotated[int | None, typer.Option("--a", help="Single argument a.")] = None,
    amax: Annotated[int, typer.Option("--amax", help="Evaluate every a <= AMAX.")] = 30,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """R_G(a) through the finite Euler product, next to its direct value when finite."""

    def compute(run: RunConfig) -> Output:
        g = load_spec(spec, exact=run.exact)
        base = series_base(g)
        finite = is_provably_finite(g)
        rows: list[Sequence[Any]] = []
        for arg in [a] if a is not None else range(1, amax + 1):
            product = euler_selberg_value(g, arg, base)
            factored = factorized_series_value(g, arg, base)
            direct = exact_sum(SeriesKind.R, g, series_params(SeriesKind.R, a=arg)) if finite else None
            encoded_direct = None if direct is None else scalar_pair(direct)
            rows.append((arg, scalar_pair(product), scalar_pair(factored), encoded_direct))
        values = [{"a": r[0], "euler_product": r[1], "factorized": r[2], "direct": r[3]} for r in rows]
        csv_rows = [(r[0], *r[1], *r[2]) for r in rows]
        return Output(
            {"base": scalar_pair(base), "n_t": conductors(g).n_t, "values": values},
            ("a", "euler_re", "euler_im", "factorized_re", "factorized_im"),
            csv_rows,
        )

    _execute(_run_config(ctx, output_format, numeric, seed), "finite Euler product formula", compute)


@lab_app.command("a2")
def lab_a2(
    ctx: typer.Context,
    s: Annotated[float, typer.Option("--s", help="Real exponent with 1/2 <= s < 1.")] = 0.6,
    p1: Annotated[int, typer.Option("--p1", help="Prime carrying G(p1) = p1^(1-s).")] = 2,
    p2: Annotated[int, typer.Option("--p2", help="Second prime of the family.")] = 3,
    xmax: Annotated[float, typer.Option("--xmax", help="Largest checkpoint.")] = 1e5,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Coprime series of the divergent family on both sides of its dichotomy."""

    def compute(_: RunConfig) -> Output:
        report = a2_experiment(s, p1, p2, int(xmax))
        convergent = TraceDocument.from_trace(report.convergent).model_dump()
        divergent = TraceDocument.from_trace(report.divergent).model_dump()
        result = {
            "coefficient": SpecDocument.from_spec(report.coefficient).model_dump(),
            "convergent": convergent,
            "divergent": divergent,
            "growth": {
                "exponent": report.growth.exponent,
                "fit_quality": report.growth.fit_quality,
                "window_start": report.growth.window_start,
                "predicted": report.predicted_exponent,
            },
        }
        rows = _trace_rows(report.convergent, "convergent") + _trace_rows(report.divergent, "divergent")
        return Output(result, ("side", "x", "re", "im"), rows)

    _execute(_run_config(ctx, output_format, numeric, seed), "divergent coprime series family", compute)


@lab_app.command("contraction")
def lab_contraction(
    ctx: typer.Context,
    alpha: Annotated[float, typer.Option("--alpha", help="Coefficient alpha of K = H + alpha H(x / rho).")] = 0.5,
    rho: Annotated[float, typer.Option("--rho", help="Scale rho > 1.")] = 2.0,
    ell: Annotated[float, typer.Option("--ell", help="Limit of K.")] = 1.5,
    xmax: Annotated[float, typer.Option("--xmax", help="Largest checkpoint.")] = 1e5,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Recover the limit of H from the limit of K on a synthetic step function."""

    def compute(_: RunConfig) -> Output:
        target = ell / (1 + alpha)
        experiment = ContractionExperiment(complex(alpha), rho, synthetic_step_source(target), ell)
        report = converse_limit_demo(experiment, [float(x) for x in geometric_schedule(int(xmax))])
        rows = [
            (x, complex(h).real, r_h, r_k)
            for x, h, r_h, r_k in zip(report.xs, report.h_values, report.h_residuals, report.k_residuals, strict=True)
        ]
        return Output(
            {
                "branch": report.branch,
                "predicted_limit": scalar_pair(report.predicted_limit),
                "recovered_limit": scalar_pair(report.recovered_limit),
                "monotone_from": report.monotone_from,
                "checkpoints": rows,
            },
            ("x", "h", "h_residual", "k_residual"),
            rows,
        )

    _execute(_run_config(ctx, output_format, numeric, seed), "converse convergence theorem", compute)


@lab_app.command("squarefree")
def lab_squarefree(
    ctx: typer.Context,
    x: Annotated[float, typer.Option("--x", help="Counting bound.")] = 1e6,
    s: Annotated[float | None, typer.Option("--s", help="Also sum mu^2(q) q^(-s) with Re s >= 1/2.")] = None,
    b: Annotated[int, typer.Option("--b", help="Coprimality modulus of the Dirichlet sum.")] = 1,
    output_format: FormatOverride = None,
    numeric: NumericOverride = None,
    seed: SeedOverride = None,
) -> None:
    """Square-free counts and square-free Dirichlet sums against their constants."""

    def compute(_: RunConfig) -> Output:
        stats = squarefree_stats(int(x))
        row = (int(x), stats.count, stats.ratio, stats.predicted_ratio)
        result: dict[str, Any] = dict(zip(("x", "count", "ratio", "predicted"), row, strict=True))
        if s is not None:
            sf = sf_dirichlet(s, b, int(x))
            result["dirichlet"] = {
                "s": s,
                "b": b,
                "partial": scalar_pair(sf.partial),
                "c1": sf.c1,
                "c2": scalar_pair(sf.c2),
                "predicted": scalar_pair(sf.predicted),
                "residual": sf.residual,
            }
        return Output(result, ("x", "count", "ratio", "predicted"), [row])

    _execute(_run_config(ctx, output_format, numeric, seed), "square-free counting constants", compute)


if __name__ == "__main__":
    app()
