from typing import Annotated, Optional

import typer

from app.cli.common import SOURCE_HELP, echo_lines, exit_on_error
from milnorcount import workflow
from milnorcount.arrangement.builtins import generic_product_arrangement
from milnorcount.lattice.lattice import (
    build_lattice,
    check_mobius,
    projective_euler_characteristic,
)
from milnorcount.model.decompose import (
    irreducible_decomposition,
    is_monodromy_trivial,
    verify_decomposition,
)
from milnorcount.model.hodge import (
    e_polynomial,
    katz_candidate,
    milnor_fiber_table,
    tate_check,
    zeta_check,
)
from milnorcount.model.spectrum2d import (
    equivalence_report,
    multiple_points,
    spectrum_unit_interval,
)
from milnorcount.output.report import (
    flag,
    format_cohomology_table,
    format_decomposition,
    format_equivalence,
    format_lattice,
    format_multiple_points,
    format_sequence,
    format_spectrum,
    format_witness,
)


@exit_on_error
def decompose(source: Annotated[str, typer.Argument(help=SOURCE_HELP)]):
    """
    Print the irreducible decomposition: number of factors, blocks of hyperplane
    indices, factor sizes, their GCD d0 and whether the monodromy is trivial.
    """
    decomposition = irreducible_decomposition(workflow.load_arrangement(source))
    verify_decomposition(decomposition)
    typer.echo(format_decomposition(decomposition))


@exit_on_error
def monodromy(source: Annotated[str, typer.Argument(help=SOURCE_HELP)]):
    """
    Decide whether the monodromy of the Milnor fiber is trivial, with the Euler
    characteristic cross-check.
    """
    _, witness = is_monodromy_trivial(workflow.load_arrangement(source))
    typer.echo(format_witness(witness))


@exit_on_error
def charpoly(source: Annotated[str, typer.Argument(help=SOURCE_HELP)]):
    """
    Print the characteristic polynomial, the count polynomial of the projective
    complement, flat counts per rank, Poincare polynomial and Betti numbers.
    """
    lattice = build_lattice(workflow.load_arrangement(source))
    check_mobius(lattice)
    echo_lines(format_lattice(lattice))


@exit_on_error
def spectrum(source: Annotated[str, typer.Argument(help=SOURCE_HELP)]):
    """
    For a line arrangement (dimension 3): points of multiplicity at least 3, the
    spectrum on (0, 1) and the equivalence report.
    """
    arrangement = workflow.load_arrangement(source)
    echo_lines(format_multiple_points(multiple_points(arrangement)))
    echo_lines(format_spectrum(spectrum_unit_interval(arrangement)))
    typer.echo(format_equivalence(equivalence_report(arrangement)))


@exit_on_error
def hodge(
    source: Annotated[Optional[str], typer.Argument(help=SOURCE_HELP)] = None,
    uv: Annotated[
        Optional[str], typer.Option(help="Use A_(u,v) instead of SOURCE, e.g. --uv 1,1")
    ] = None,
):
    """
    Print the eigenspace cohomology table of the Milnor fiber, the Tate verdict, the
    Hodge-Deligne polynomial when every class is typed and the Katz candidate.
    """
    if (source is None) == (uv is None):
        raise typer.BadParameter("Give either SOURCE or --uv.")
    if uv is not None:
        try:
            u, v = (int(x) for x in uv.split(","))
        except ValueError:
            raise typer.BadParameter(f"--uv expects two integers u,v, got {uv!r}.")
        arrangement = generic_product_arrangement(u, v)
    else:
        arrangement = workflow.load_arrangement(source)

    decomposition = irreducible_decomposition(arrangement)
    table = milnor_fiber_table(decomposition)
    echo_lines(format_cohomology_table(table))
    typed = tate_check(table)
    typer.echo(f"tate={flag(typed)}")
    typer.echo(f"HD={e_polynomial(table).format() if typed else 'undefined'}")
    typer.echo(f"katz={katz_candidate(table).format() if typed else 'undefined'}")
    euler = projective_euler_characteristic(build_lattice(arrangement))
    typer.echo(f"zeta={flag(zeta_check(table, euler))}")
    if decomposition.gcd == 2:
        dims = table.dimensions(1)
        typer.echo(f"minus_one dims={format_sequence(dims)} total={table.total_dimension(1)}")
