import asyncio
from pathlib import Path
from typing import List, Optional

import typer

from cayley_isoperimetry.core.context import ApplicationContext
from cayley_isoperimetry.exceptions import ConfigValidationError
from cayley_isoperimetry.groups.factory import GROUP_TYPES
from cayley_isoperimetry.groups.zoo import zoo_backends
from cayley_isoperimetry.model.report import InvariantReport
from cayley_isoperimetry.reporting.writer import (
    canonical_json,
    write_curves,
    write_report,
)
from cayley_isoperimetry.verify.selfcheck import SelfcheckReport, run_selfcheck
from cayley_isoperimetry.workflow.job_handler import JobHandler, load_job_config

app = typer.Typer(
    help="Isoperimetric, spectral and Littlewood-norm invariants of Cayley graphs",
    no_args_is_help=True,
)

SUCCESS_SYMBOL = "✓"
FAILURE_SYMBOL = "❌"

EXIT_ASSERTION_FAILED = 1
EXIT_INVALID_CONFIG = 2
EXIT_IO_ERROR = 3

GROUP_EXAMPLES = {
    "free": '{"type": "free", "rank": 2}',
    "free_abelian": '{"type": "free_abelian", "rank": 2}',
    "integers": '{"type": "integers"}',
    "cyclic": '{"type": "cyclic", "n": 6}',
    "finite_table": '{"type": "finite_table", "csv": "tables/s3.csv"}',
    "permutation": '{"type": "permutation", "generators": [[1, 0, 2], [0, 2, 1]]}',
    "free_product_cyclic": '{"type": "free_product_cyclic", "orders": [2, 3]}',
    "lamplighter": '{"type": "lamplighter"}',
}


def _print_report(report: InvariantReport) -> None:
    """Print task status and failing checks."""
    for task_name, status in report.task_status.items():
        symbol = SUCCESS_SYMBOL if status["success"] else FAILURE_SYMBOL
        typer.echo(f"{task_name}: {symbol}")
        if status["error"]:
            typer.echo(f"  Error: {status['error']}")
    failed = report.failed_checks
    total = len(report.assertions)
    typer.echo(f"\n{total - len(failed)}/{total} assertions passed")
    for check_id in failed:
        typer.echo(f"{FAILURE_SYMBOL} {check_id}")


def _print_matrix(report: SelfcheckReport) -> None:
    for suite, row in sorted(report.matrix().items()):
        symbol = SUCCESS_SYMBOL if all(row.values()) else FAILURE_SYMBOL
        cells = ", ".join(
            f"{instance} {SUCCESS_SYMBOL if ok else FAILURE_SYMBOL}"
            for instance, ok in sorted(row.items())
        )
        typer.echo(f"{symbol} {suite}: {cells}")


@app.command()
def run(
    ctx: typer.Context,
    config_file: Path = typer.Argument(..., help="Path to the JSON job config"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory"),
    threads: Optional[int] = typer.Option(
        None, "--threads", "-t", min=1, help="Worker threads"
    ),
    seed: Optional[int] = typer.Option(
        None, "--seed", "-s", help="Override the job seed"
    ),
    config_path: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Path to settings file"
    ),
    no_cache: bool = typer.Option(
        False, "--no-cache", help="Do not use the persistent ball cache"
    ),
    progress: bool = typer.Option(False, "--progress", help="Show progress bars"),
) -> None:
    """Run a job and write report.json, timings.json, CSV curves and summary.md."""

    async def _run() -> int:
        async with ApplicationContext(
            config_path, typer_ctx=ctx, use_cache=not no_cache
        ) as app_ctx:
            try:
                # Caps are checked here, before any task runs
                job = load_job_config(config_file, app_ctx.conf.get("caps"))
                handler = JobHandler(
                    app_ctx.conf,
                    app_ctx.logger_manager,
                    ball_cache=app_ctx.ball_cache,
                    # --threads wins over the job, the job over settings
                    threads=threads
                    or job.threads
                    or int(app_ctx.conf.get("threads", 1)),
                    show_progress=progress,
                )
                report = await handler.run(job, seed=seed)
            except ConfigValidationError as e:
                typer.echo(f"{FAILURE_SYMBOL} Invalid job config: {e}", err=True)
                return EXIT_INVALID_CONFIG
            except OSError as e:
                typer.echo(
                    f"{FAILURE_SYMBOL} Could not read {config_file}: {e}", err=True
                )
                return EXIT_IO_ERROR

            # --out wins over the job's output field
            out_dir = out or Path(job.output or app_ctx.conf.get("output.dir", "out"))
            extra = {"cache": app_ctx.ball_cache.stats()} if app_ctx.ball_cache else {}
            try:
                write_report(report, out_dir, extra_timings=extra)
            except OSError as e:
                typer.echo(
                    f"{FAILURE_SYMBOL} Could not write report to {out_dir}: {e}",
                    err=True,
                )
                return EXIT_IO_ERROR

            _print_report(report)
            typer.echo(f"Report written to {out_dir}")
            # Non-zero exit when any assertion fails
            return 0 if report.all_passed else EXIT_ASSERTION_FAILED

    code = asyncio.run(_run())
    if code:
        raise typer.Exit(code=code)


@app.command()
def selfcheck(
    seed: int = typer.Option(
        0, "--seed", "-s", help="Seed for the randomised batteries"
    ),
    table: Optional[List[Path]] = typer.Option(
        None, "--table", help="Extra multiplication-table CSV to validate and check"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Write selfcheck.json here"
    ),
) -> None:
    """Run every invariant suite over the built-in instance zoo."""

    async def _selfcheck() -> SelfcheckReport:
        async with ApplicationContext(use_cache=False):
            # The suites are CPU bound and synchronous
            return await asyncio.to_thread(run_selfcheck, seed, table or [])

    report = asyncio.run(_selfcheck())
    _print_matrix(report)

    if out is not None:
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "selfcheck.json").write_text(
                canonical_json(
                    {
                        "seed": seed,
                        "checks": [r.to_dict() for r in report.records],
                        "matrix": report.matrix(),
                    }
                ),
                encoding="utf-8",
            )
            write_curves({"selfcheck": [r.to_dict() for r in report.records]}, out)
        except OSError as e:
            typer.echo(f"{FAILURE_SYMBOL} Could not write to {out}: {e}", err=True)
            raise typer.Exit(code=EXIT_IO_ERROR)

    if not report.all_passed:
        typer.echo(f"\n{FAILURE_SYMBOL} {len(report.failed_checks)} check(s) failed")
        for check_id in report.failed_checks:
            typer.echo(f"  {check_id}")
        raise typer.Exit(code=EXIT_ASSERTION_FAILED)
    typer.echo(f"\n{SUCCESS_SYMBOL} All {len(report.records)} checks passed")


@app.command()
def list_groups() -> None:
    """List the supported group types and the self-check zoo."""
    typer.echo("Group types:")
    for group_type in GROUP_TYPES:
        typer.echo(f"  • {group_type}: {GROUP_EXAMPLES[group_type]}")
    typer.echo("\nSelf-check zoo:")
    for name, backend in zoo_backends().items():
        typer.echo(f"  • {name}: {backend!r}")


@app.command()
def validate(
    config_file: Path = typer.Argument(..., help="Path to the JSON job config"),
    config_path: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Path to settings file"
    ),
) -> None:
    """Check a job config against the schema and the desk-scale caps."""

    async def _validate() -> int:
        async with ApplicationContext(config_path, use_cache=False) as app_ctx:
            try:
                job = load_job_config(config_file, app_ctx.conf.get("caps"))
                # Building the inputs catches bad group and set descriptors
                handler = JobHandler(app_ctx.conf, app_ctx.logger_manager)
                backend, sets = handler.build_inputs(job)
            except ConfigValidationError as e:
                typer.echo(f"{FAILURE_SYMBOL} {e}")
                return EXIT_INVALID_CONFIG
            except OSError as e:
                typer.echo(f"{FAILURE_SYMBOL} Could not read {config_file}: {e}")
                return EXIT_IO_ERROR
            # Show task name, type and dependencies
            for task in job.tasks:
                deps = ""
                if task.depends_on:
                    deps = f" - depends on: {', '.join(task.depends_on)}"
                typer.echo(f"{SUCCESS_SYMBOL} {task.name} ({task.task_type}){deps}")
            labels = ", ".join(s.label for s in sets)
            typer.echo(
                f"\n{SUCCESS_SYMBOL} Job '{job.name}' is valid: "
                f"{backend!r}, sets {labels}"
            )
            return 0

    code = asyncio.run(_validate())
    if code:
        raise typer.Exit(code=code)


if __name__ == "__main__":
    app()
