"""
Command-line interface.

    umeb-toolkit construct --theta 0,1/3,0,1,0,1/3 --spec rotated -o pair.json
    umeb-toolkit verify pair.json --report report.json
    umeb-toolkit sweep --seed 7 --count 100
    umeb-toolkit audit --example 2

Angles are multiples of π ("1/3" is π/3) unless suffixed with "rad". Exit
codes: 0 when every mandatory check passes, 1 on a verification failure, 2 on
usage, configuration or parse errors. Summaries go to stdout, logs to stderr.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

import typer
from pydantic import ValidationError

from ._version import __version__
from .audit import AuditResult, example_params, run_audit
from .codec import read_pair, write_json, write_pair
from .config import BackendChoice, RunConfig, parse_grid
from .construct import (
    FirstBasisSpec,
    Sign,
    ThetaParams,
    construct_from_operators,
    construct_pair,
)
from .events import UmebEvents
from .exceptions import ConfigValidationError, UmebException
from .fixtures import example_numbers
from .linalg import OperatorMatrix
from .log_config import LoggingContext, configure_logging, get_context_logger
from .scalar import Angle, AngleFrac, Backend
from .settings import get_settings
from .sweep import run_sweep
from .verify import VerificationReport, verify_pair


logger = get_context_logger("cli")

EXIT_PASS = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

app = typer.Typer(
    name="umeb-toolkit",
    help="Construct and verify mutually unbiased UMEB pairs in C2⊗C3.",
    no_args_is_help=True,
    add_completion=False,
)


class SpecName(str, Enum):
    DEFAULT = "default"
    ROTATED = "rotated"


class ConstructBackend(str, Enum):
    AUTO = "auto"
    EXACT = "exact"
    FLOAT = "float"


class SweepBackend(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


def parse_angles(text: str, expected: int, option: str) -> tuple[Angle, ...]:
    """Parse comma-separated angles: "p/q" multiples of π, or "<x>rad".

    Raises:
        ConfigValidationError: On malformed tokens or the wrong count
    """
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if len(tokens) != expected:
        raise ConfigValidationError(
            f"{option} needs {expected} comma-separated angles", config_key=option, config_value=text
        )
    angles: list[Angle] = []
    for token in tokens:
        try:
            if token.endswith("rad"):
                angles.append(float(token[:-3]))
            else:
                angles.append(AngleFrac(Fraction(token.removesuffix("pi").removesuffix("π") or "1")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigValidationError(
                f"invalid angle '{token}'", config_key=option, config_value=text
            ) from exc
    return tuple(angles)


def _grid_option(value: str | None) -> tuple[int, int] | None:
    return parse_grid(value) if value is not None else None


def _fail(message: str, code: int = EXIT_USAGE) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code)


@contextmanager
def _command(name: str) -> Iterator[LoggingContext]:
    """Root span of one command; maps toolkit errors to exit code 2."""
    with LoggingContext(operation=f"cli.{name}") as ctx:
        logger.info(UmebEvents.COMMAND_STARTED, command=name)
        try:
            yield ctx
        except ValidationError as exc:
            logger.error(UmebEvents.COMMAND_COMPLETED, command=name, error=str(exc))
            raise _fail(f"invalid settings: {exc}") from exc
        except UmebException as exc:
            logger.error(UmebEvents.COMMAND_COMPLETED, command=name, error=str(exc))
            raise _fail(str(exc)) from exc
        logger.info(UmebEvents.COMMAND_COMPLETED, command=name)


def _format_witness(witness: Any) -> str:
    if isinstance(witness, dict):
        return ", ".join(f"{k}={v}" for k, v in witness.items())
    return str(witness)


def render_report(report: VerificationReport) -> str:
    """Human summary of a verification report."""
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        kind = "" if check.mandatory else " (advisory)"
        line = f"{status} [{check.backend.value}] {check.name}{kind}  residual={check.residual:.3e}"
        if not check.passed and check.witness is not None:
            line += f"  witness: {_format_witness(check.witness)}"
        lines.append(line)
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    worst = report.worst_failure()
    if not report.overall and worst is not None:
        lines.append(
            f"worst failure: {worst.name} [{worst.backend.value}] residual={worst.residual:.3e}"
            f" witness: {_format_witness(worst.witness)}"
        )
    return "\n".join(lines) + "\n"


def render_audit(result: AuditResult) -> str:
    lines = [
        f"example {result.example}: {result.title}",
        f"theta = ({', '.join(map(str, result.params.theta))})",
        f"theta' = ({', '.join(map(str, result.params.theta_prime))}), "
        f"S branch {result.params.s_branch.value}",
        f"W closure branch: {result.w_branch.value if result.w_branch else 'none'}",
    ]
    if result.closure_theta6 is not None:
        lines.append(f"closure-predicted theta6 = {result.closure_theta6}")
    lines.append("reconstruction:")
    for diff in result.reconstruction:
        state = "match" if diff.matches else f"differs at {diff.entry} by {diff.max_deviation:.3e}"
        lines.append(f"  {diff.name}: {state}")
    lines.append("printed conditions:")
    for check in result.printed_conditions:
        lines.append(f"  {'PASS' if check.passed else 'FAIL'} {check.name}")
    for pairing in result.pairings:
        lines.append(f"pairing {pairing.pairing}:")
        lines.extend(f"  {line}" for line in render_report(pairing.report).splitlines())
    for note in result.notes:
        lines.append(f"note: {note}")
    lines.append(f"verdict: {result.verdict}")
    return "\n".join(lines) + "\n"


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(__version__)
        raise typer.Exit(EXIT_PASS)


@app.callback()
def _main(
    log_level: Annotated[str | None, typer.Option("--log-level", help="Log level for stderr")] = None,
    log_json: Annotated[bool | None, typer.Option("--log-json/--log-text", help="JSON log lines")] = None,
    version: Annotated[  # noqa: ARG001
        bool,
        typer.Option("--version", callback=_version_callback, is_eager=True, help="Print the version and exit"),
    ] = False,
) -> None:
    """Construct and verify mutually unbiased UMEB pairs in C2⊗C3."""
    try:
        settings = get_settings()
        level, json_output = settings.log_level, settings.log_json
    except ValidationError as exc:
        raise _fail(f"invalid settings: {exc}") from exc
    configure_logging(log_level or level, json_output if log_json is None else log_json)


@app.command()
def construct(
    out: Annotated[Path, typer.Option("--out", "-o", help="Pair file to write")],
    theta: Annotated[str | None, typer.Option(help="θ1..θ6, e.g. 0,1/3,0,1,0,1/3")] = None,
    theta_prime: Annotated[str, typer.Option(help="θ'1,θ'2")] = "0,0",
    s_branch: Annotated[Sign, typer.Option(help="Sign row of the S template")] = Sign.PLUS,
    spec: Annotated[SpecName, typer.Option(help="Completion pair of the first basis")] = SpecName.DEFAULT,
    example: Annotated[int | None, typer.Option(help="Take the angles of reference example N")] = None,
    backend: Annotated[ConstructBackend, typer.Option(help="Arithmetic backend")] = ConstructBackend.AUTO,
    tol: Annotated[float | None, typer.Option(help="Float tolerance")] = None,
    unchecked: Annotated[bool, typer.Option(help="Skip the unitarity gate")] = False,
    identity: Annotated[bool, typer.Option(help="Use W = I, S = I (requires --unchecked)")] = False,
) -> None:
    """Build a basis pair and write it as JSON."""
    with _command("construct"):
        run = RunConfig.from_settings(
            "construct", tolerance=tol, output_path=out, unchecked=unchecked, example=example
        )
        first_spec = FirstBasisSpec.by_name(spec.value)
        forced = None if backend is ConstructBackend.AUTO else Backend(backend.value)

        if identity:
            if not unchecked:
                raise _fail("--identity requires --unchecked")
            chosen = forced or Backend.EXACT
            pair = construct_from_operators(
                first_spec.to_backend(chosen),
                OperatorMatrix.identity(3, chosen),
                OperatorMatrix.identity(2, chosen),
            )
        else:
            if example is not None:
                params = example_params(example, run.tolerance)
            elif theta is not None:
                params = ThetaParams(
                    parse_angles(theta, 6, "--theta"),
                    parse_angles(theta_prime, 2, "--theta-prime"),
                    s_branch,
                )
            else:
                raise _fail("give --theta, --example or --identity")
            pair = construct_pair(params, first_spec, forced, unchecked=unchecked, tolerance=run.tolerance)

        write_pair(pair, out)
        typer.echo(f"wrote {pair.backend.value} pair ({first_spec.name} first basis) to {out}")


@app.command()
def verify(
    path: Annotated[Path, typer.Argument(help="Pair file to verify")],
    backend: Annotated[BackendChoice | None, typer.Option(help="auto, exact, float or both")] = None,
    tol: Annotated[float | None, typer.Option(help="Float tolerance")] = None,
    grid: Annotated[str | None, typer.Option(help="Complement scan grid, e.g. 181x360")] = None,
    report: Annotated[Path | None, typer.Option(help="Write the JSON report here")] = None,
) -> None:
    """Verify a pair file; exit 0 iff every mandatory check passes."""
    with _command("verify"):
        run = RunConfig.from_settings(
            "verify",
            backend=backend,
            tolerance=tol,
            grid=_grid_option(grid),
            input_path=path,
            report_path=report,
        )
        pair = read_pair(path, run.tolerance)
        result = verify_pair(pair, run.verify)
        if report is not None:
            write_json(result.to_dict(), report)
        typer.echo(render_report(result), nl=False)
    if not result.overall:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def sweep(
    seed: Annotated[int | None, typer.Option(help="Root PRNG seed")] = None,
    count: Annotated[int | None, typer.Option(help="Number of parameter sets")] = None,
    workers: Annotated[int | None, typer.Option(help="Worker threads")] = None,
    backend: Annotated[SweepBackend, typer.Option(help="exact samples multiples of π/12")] = SweepBackend.FLOAT,
    tol: Annotated[float | None, typer.Option(help="Float tolerance")] = None,
    grid: Annotated[str | None, typer.Option(help="Complement scan grid, e.g. 181x360")] = None,
    report: Annotated[Path | None, typer.Option(help="Write the JSON summary here")] = None,
) -> None:
    """Verify closure-generated parameter sets and summarize the residuals."""
    with _command("sweep"):
        run = RunConfig.from_settings(
            "sweep",
            tolerance=tol,
            grid=_grid_option(grid),
            seed=seed,
            count=count,
            workers=workers,
            sweep_backend=Backend(backend.value),
            report_path=report,
        )
        summary = run_sweep(run.sweep, run.verify)
        if report is not None:
            write_json(summary.to_dict(), report, kind="sweep")
        typer.echo(summary.render(), nl=False)
    if not summary.all_passed:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def audit(
    example: Annotated[int | None, typer.Option(help="Reference example 1, 2 or 3 (default: all)")] = None,
    tol: Annotated[float | None, typer.Option(help="Float tolerance")] = None,
    report: Annotated[Path | None, typer.Option(help="Write the JSON audit here")] = None,
) -> None:
    """Rebuild the reference examples, diff them against the printed data and verify them."""
    with _command("audit"):
        run = RunConfig.from_settings("audit", tolerance=tol, example=example, report_path=report)
        numbers = [example] if example is not None else example_numbers()
        results = [run_audit(n, run.verify) for n in numbers]
        if report is not None:
            write_json([r.to_dict() for r in results], report, kind="audit")
        typer.echo("\n".join(render_audit(r) for r in results), nl=False)
    if not all(r.passed for r in results):
        raise typer.Exit(EXIT_FAILED)


def main() -> None:
    """Console entry point."""
    app()


__all__ = [
    "app",
    "main",
    "parse_angles",
    "render_report",
    "render_audit",
]


if __name__ == "__main__":
    main()
