"""
Byte-stable text rendering of every result printed by the command line. One record
per line, space-separated key=value fields, booleans as true/false, polynomials in
ascending degree with explicit signs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from milnorcount.counting.ffcount import CountResult, FiberCountTable, SymmetricCountRecord
from milnorcount.counting.katz import Mod8Record, Report, Rk2Row, Verdict
from milnorcount.lattice.lattice import (
    IntersectionLattice,
    betti_from_count_poly,
    characteristic_polynomial,
    poincare_polynomial,
    projective_count_polynomial,
    rank_sizes,
)
from milnorcount.model.decompose import Decomposition, TrivialityWitness
from milnorcount.model.hodge import CohomologyTable, ClassGroup
from milnorcount.model.spectrum2d import EquivalenceReport, MultiplePoint, SpectrumTable


def flag(value: bool) -> str:
    return "true" if value else "false"


def format_block(block: Sequence[int]) -> str:
    if len(block) > 1 and list(block) == list(range(block[0], block[-1] + 1)):
        return f"[{block[0]}..{block[-1]}]"
    return "[" + ",".join(str(i) for i in block) + "]"


def format_sequence(values: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def format_decomposition(decomposition: Decomposition) -> str:
    """
    E.g. "q=2 blocks=[0..3][4..9] d=(4,6) d0=2 trivial=false".
    """
    blocks = "".join(format_block(block) for block in decomposition.blocks)
    return (
        f"q={decomposition.q} blocks={blocks} d={format_sequence(decomposition.factor_sizes)} "
        f"d0={decomposition.gcd} trivial={flag(decomposition.gcd == 1)}"
    )


def format_witness(witness: TrivialityWitness) -> str:
    return (
        f"d0={witness.d0} trivial={flag(witness.trivial)} q={witness.q} "
        f"d={format_sequence(witness.factor_sizes)} "
        f"euler={witness.euler_characteristic} reducible={flag(witness.reducible)}"
    )


def format_lattice(lattice: IntersectionLattice) -> List[str]:
    projective = projective_count_polynomial(lattice)
    return [
        f"chi={characteristic_polynomial(lattice).format()}",
        f"projective={projective.format()}",
        f"euler={projective(1)}",
        f"flats={format_sequence(rank_sizes(lattice))}",
        f"poincare={poincare_polynomial(lattice).format()}",
        f"betti={format_sequence(betti_from_count_poly(projective))}",
    ]


def format_multiple_points(points: Sequence[MultiplePoint]) -> List[str]:
    return [
        f"point={format_sequence(point.point)} multiplicity={point.multiplicity}"
        for point in points
        if point.multiplicity >= 3
    ]


def format_spectrum(table: SpectrumTable) -> List[str]:
    return [f"{j}/{table.d} {value}" for j, value in table.rows()]


def format_equivalence(report: EquivalenceReport) -> str:
    return (
        f"reducible={flag(report.reducible)} "
        f"trivial_monodromy={flag(report.trivial_monodromy)} "
        f"spectrum_vanishes={flag(report.spectrum_vanishes)} "
        f"tate_h2={flag(report.tate_h2)} "
        f"square_divides_charpoly={flag(report.square_divides_charpoly)} "
        f"all_agree={flag(report.all_agree)}"
    )


def _eigenvalue(index: int, order: int) -> str:
    return str(Fraction(index, order))


def _class_group(group: ClassGroup) -> str:
    weight = "?" if group.weight is None else f"({group.weight},{group.weight})"
    return f"H^{group.degree}:{group.dim}{weight}"


def format_cohomology_table(table: CohomologyTable) -> List[str]:
    """
    One line per eigenvalue exp(2 pi i k/order), written as k/order.
    """
    return [
        f"eigenvalue={_eigenvalue(index, table.order)} "
        f"dims={format_sequence(table.dimensions(index))} "
        + " ".join(_class_group(group) for group in table.part(index))
        for index in table.eigenvalues()
    ]


def format_count(result: CountResult, target: str) -> str:
    return f"p={result.p} method={result.method} {target}={result.value}"


def format_fiber_table(table: FiberCountTable) -> str:
    counts = ",".join(str(c) for c in table.counts)
    return (
        f"factor={table.factor_index} p={table.p} d={table.d_j} cosets={table.cosets} "
        f"backend={table.backend} counts=({counts})"
    )


def format_verdict(verdict: Verdict) -> str:
    return (
        f"p={verdict.p} count={verdict.counted} predicted={verdict.predicted} "
        f"match={flag(verdict.match)} count%8={verdict.counted_mod8} "
        f"predicted%8={verdict.predicted_mod8}"
    )


def format_report(report: Report) -> List[str]:
    lines = [f"candidate={report.candidate.format()}"]
    lines += [format_verdict(verdict) for verdict in report.verdicts]
    if report.falsified:
        at = ",".join(str(p) for p in report.falsified_at)
        lines.append(f"conclusion=falsified at={at}")
    else:
        lines.append("conclusion=consistent-so-far")
    return lines


def format_rk2_row(row: Rk2Row) -> str:
    line = format_verdict(Verdict(p=row.p, counted=row.count, predicted=row.predicted))
    if row.agrees_with_published is None:
        return f"{line} published=none"
    return f"{line} published={'agree' if row.agrees_with_published else 'differ'}"


def format_symmetric_record(record: SymmetricCountRecord) -> str:
    return (
        f"p={record.p} n1p={record.n1p} n1pp={record.n1pp} n2p={record.n2p} "
        f"n2pp={record.n2pp} A={record.A}"
    )


def format_mod8_record(record: Mod8Record) -> str:
    return (
        f"p={record.p} k={record.k} count={record.count} predicted={record.predicted} "
        f"predicted_zero_mod8={flag(record.predicted_vanishes_mod8)} "
        f"fiber_counts_zero_mod4={flag(record.fiber_counts_divisible_by_four)} "
        f"count_nonzero_mod8={flag(record.count_nonzero_mod8)} "
        f"congruence={flag(record.congruence_holds)} "
        f"fixed_points={flag(record.fixed_points_agree)}"
    )
