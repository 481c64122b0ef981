from typing import Annotated, Optional

import typer

from app.cli.common import FAILURE_EXIT_CODE, echo_lines, exit_on_error
from milnorcount import workflow
from milnorcount.arrangement.builtins import generic_arrangement
from milnorcount.config import resolve_config
from milnorcount.counting.ffcount import factor_fiber_counts, symmetric_fiber_count
from milnorcount.counting.field import PrimeField
from milnorcount.counting.katz import mod8_obstruction, reproduce_rk2
from milnorcount.output.report import (
    format_fiber_table,
    format_mod8_record,
    format_rk2_row,
    format_symmetric_record,
)

app = typer.Typer()


@app.command()
@exit_on_error
def rk2(
    primes: Annotated[
        Optional[str],
        typer.Option(help="Primes to count at; defaults to the eleven published ones"),
    ] = None,
    threads: Annotated[Optional[int], typer.Option(help="Worker threads")] = None,
    config: Annotated[Optional[str], typer.Option("--config", help="Counting configuration")] = None,
):
    """
    Milnor fiber counts of A_(1,1) against its Katz candidate, compared with the
    published table. Rows whose counts differ from the published ones are marked
    published=differ.
    """
    counting_config = resolve_config(config, threads=threads)
    prime_list = workflow.parse_primes(primes) if primes else None
    rows = reproduce_rk2(prime_list, counting_config)
    echo_lines(format_rk2_row(row) for row in rows)
    mismatched = [row.p for row in rows if not row.match]
    if mismatched:
        typer.echo(f"conclusion=falsified at={','.join(str(p) for p in mismatched)}")
    else:
        typer.echo("conclusion=consistent-so-far")


@app.command()
@exit_on_error
def mod8(
    primes: Annotated[
        str, typer.Option(help="Primes congruent to 11 mod 12")
    ] = "11,23,47,59,71,83",
    details: Annotated[
        bool, typer.Option(help="Also print the symmetric counts and the factor tables")
    ] = False,
):
    """
    Check the mod 8 obstruction to polynomial count of the A_(1,1) Milnor fiber at
    primes p = 11 mod 12.
    """
    records = []
    for p in workflow.parse_primes(primes):
        record = mod8_obstruction(p)
        records.append(record)
        typer.echo(format_mod8_record(record))
        if details:
            field = PrimeField(p)
            typer.echo(format_symmetric_record(symmetric_fiber_count(field)))
            for index, (n, d) in enumerate([(2, 4), (4, 6)]):
                table = factor_fiber_counts(generic_arrangement(n), d, field, factor_index=index)
                typer.echo(format_fiber_table(table))
    if not all(record.obstruction_holds for record in records):
        typer.echo("error: the mod 8 obstruction failed", err=True)
        raise typer.Exit(code=FAILURE_EXIT_CODE)
