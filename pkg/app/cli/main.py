from typing import Annotated

import typer

from app.cli import counting, structure
from app.cli.common import setup_logging
from app.cli.reproduce import app as reproduce_app

cli_app = typer.Typer(no_args_is_help=True)


@cli_app.callback()
def main(
    verbose: Annotated[
        int, typer.Option("--verbose", "-v", count=True, help="Log to stderr (-vv for debug)")
    ] = 0,
):
    """
    Exact computations on central hyperplane arrangements: decomposition, monodromy,
    lattice polynomials, spectra, Hodge tables and point counts over prime fields.
    """
    setup_logging(verbose)


for command in [
    structure.decompose,
    structure.monodromy,
    structure.charpoly,
    structure.spectrum,
    structure.hodge,
    counting.count,
    counting.katz,
]:
    cli_app.command()(command)
cli_app.add_typer(reproduce_app, name="reproduce", help="Reproduce published results on A_(1,1).")


if __name__ == "__main__":
    cli_app()
