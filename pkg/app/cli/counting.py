from typing import Annotated, Optional

import typer

from app.cli.common import (
    FALSIFIED_EXIT_CODE,
    SOURCE_HELP,
    Method,
    Target,
    echo_lines,
    exit_on_error,
)
from milnorcount import workflow
from milnorcount.config import resolve_config
from milnorcount.output.report import format_count, format_report

MethodOption = Annotated[
    Method,
    typer.Option(help="brute: enumerate F_p^(n+1); factored: convolve factor counts; fast: factored with the quadratic fast path"),
]
TargetOption = Annotated[
    Target,
    typer.Option(help="Variety to count: Milnor fiber Q = 1, affine or projective complement"),
]
BudgetOption = Annotated[
    Optional[int], typer.Option(help="Maximal number of points a brute-force enumeration may visit")
]
ThreadsOption = Annotated[
    Optional[int], typer.Option(help="Worker threads for brute-force enumeration")
]
ConfigOption = Annotated[
    Optional[str], typer.Option("--config", help="YAML file with a counting section")
]
ProgressOption = Annotated[bool, typer.Option(help="Progress bar over primes on stderr")]
ExpectOption = Annotated[
    bool,
    typer.Option(
        "--expect-polynomial-count",
        help="Exit with status 1 if some count disagrees with the candidate polynomial",
    ),
]


def _run(source, primes, target, method, budget, threads, config_path, progress, check):
    config = resolve_config(
        config_path, budget=budget, threads=threads, progress=progress or None
    )
    arrangement = workflow.load_arrangement(source)
    return workflow.count_at_primes(
        arrangement,
        primes,
        target=target.value,
        method=method.value,
        config=config,
        check_polynomial_count=check,
    )


@exit_on_error
def count(
    source: Annotated[str, typer.Argument(help=SOURCE_HELP)],
    prime: Annotated[Optional[int], typer.Option(help="A single prime")] = None,
    primes: Annotated[
        Optional[str], typer.Option(help="Primes as a range a..b or a list p1,p2,...")
    ] = None,
    method: MethodOption = Method.fast,
    target: TargetOption = Target.milnor,
    budget: BudgetOption = None,
    threads: ThreadsOption = None,
    config: ConfigOption = None,
    progress: ProgressOption = False,
    expect_polynomial_count: ExpectOption = False,
):
    """
    Count points over prime fields, one line per prime. Bad primes of the
    arrangement are skipped with a notice.
    """
    if (prime is None) == (primes is None):
        raise typer.BadParameter("Give exactly one of --prime and --primes.")
    prime_list = [prime] if prime is not None else workflow.parse_primes(primes)
    report = _run(
        source, prime_list, target, method, budget, threads, config, progress,
        expect_polynomial_count,
    )
    for p in report.skipped:
        typer.echo(f"skipped p={p} reason=bad-prime", err=True)
    echo_lines(format_count(result, target.value) for result in report.results)
    if report.report is not None:
        echo_lines(format_report(report.report))
        if report.report.falsified:
            raise typer.Exit(code=FALSIFIED_EXIT_CODE)


@exit_on_error
def katz(
    source: Annotated[str, typer.Argument(help=SOURCE_HELP)],
    primes: Annotated[str, typer.Option(help="Primes as a range a..b or a list p1,p2,...")],
    method: MethodOption = Method.fast,
    target: TargetOption = Target.milnor,
    budget: BudgetOption = None,
    threads: ThreadsOption = None,
    config: ConfigOption = None,
    progress: ProgressOption = False,
    expect_polynomial_count: ExpectOption = False,
):
    """
    Compare point counts with the only polynomial that may count the variety and
    print one verdict per prime: p, count, predicted value, match, both residues
    mod 8.
    """
    report = _run(
        source, workflow.parse_primes(primes), target, method, budget, threads, config,
        progress, True,
    )
    for p in report.skipped:
        typer.echo(f"skipped p={p} reason=bad-prime", err=True)
    echo_lines(format_report(report.report))
    if expect_polynomial_count and report.report.falsified:
        raise typer.Exit(code=FALSIFIED_EXIT_CODE)
