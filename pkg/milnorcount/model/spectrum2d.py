"""
Line arrangements (central arrangements in dimension 3): multiple points, spectrum
on the unit interval and the four-way equivalence report between reducibility,
trivial monodromy, vanishing spectrum and Tate-type H^2.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict

from milnorcount.arrangement.arrangement import CentralArrangement, require_essential
from milnorcount.exceptions import InconsistencyError, PreconditionError
from milnorcount.lattice.lattice import build_lattice, characteristic_polynomial
from milnorcount.lattice.polynomial import T_MINUS_ONE
from milnorcount.linalg import primitive_integer_vector
from milnorcount.model.decompose import irreducible_decomposition


class MultiplePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: Tuple[int, int, int]
    "Canonical primitive homogeneous coordinates in P^2."
    lines: Tuple[int, ...]
    "Indices of the lines through the point."

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


class SpectrumTable(BaseModel):
    """
    Spectral multiplicities m_alpha for alpha = j/d, j = 1..d-1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    d: int
    entries: Dict[Fraction, int]

    def vanishes(self) -> bool:
        return all(value == 0 for value in self.entries.values())

    def rows(self) -> List[Tuple[int, int]]:
        return [(j, self.entries[Fraction(j, self.d)]) for j in range(1, self.d)]


class EquivalenceReport(BaseModel):
    """
    The four conditions that are equivalent for line arrangements:
    (i) H^2 of the Milnor fiber has no off-diagonal Hodge numbers,
    (ii) the arrangement is reducible, (iii) the monodromy is trivial,
    (iv) the spectrum vanishes on (0, 1).
    """

    tate_h2: bool
    reducible: bool
    trivial_monodromy: bool
    spectrum_vanishes: bool
    square_divides_charpoly: bool
    "(t - 1)^2 divides the characteristic polynomial."

    @property
    def all_agree(self) -> bool:
        return len({
            self.tate_h2,
            self.reducible,
            self.trivial_monodromy,
            self.spectrum_vanishes,
            self.square_divides_charpoly,
        }) == 1


def _require_plane(arrangement: CentralArrangement) -> None:
    if arrangement.dim != 3:
        raise PreconditionError(
            f"Line arrangements live in dimension 3, got dimension {arrangement.dim}."
        )
    if arrangement.d < 2:
        raise PreconditionError("At least two lines are required.")
    require_essential(arrangement)


def _cross(first: Tuple[int, ...], second: Tuple[int, ...]) -> Tuple[int, int, int]:
    return (
        first[1] * second[2] - first[2] * second[1],
        first[2] * second[0] - first[0] * second[2],
        first[0] * second[1] - first[1] * second[0],
    )


def multiple_points(arrangement: CentralArrangement) -> List[MultiplePoint]:
    """
    Intersection points of the projective lines, grouped, ordered by canonical
    coordinates. Every pair of lines meets in exactly one of them.
    """
    _require_plane(arrangement)
    normals = arrangement.normals
    points: Dict[Tuple[int, int, int], set] = {}
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            point, _ = primitive_integer_vector(_cross(normals[i], normals[j]))
            points.setdefault(point, set()).update((i, j))
    result = [
        MultiplePoint(point=point, lines=tuple(sorted(lines)))
        for point, lines in sorted(points.items())
    ]
    pairs = sum(math.comb(p.multiplicity, 2) for p in result)
    if pairs != math.comb(arrangement.d, 2):
        raise InconsistencyError(
            f"Multiple points account for {pairs} pairs of lines instead of "
            f"{math.comb(arrangement.d, 2)}."
        )
    return result


def _choose2(a: int) -> int:
    return math.comb(a, 2) if a >= 2 else 0


def _ceil(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def spectrum_unit_interval(arrangement: CentralArrangement) -> SpectrumTable:
    """
    m_{j/d} = C(j-1, 2) - sum over points of multiplicity m >= 3 of
    C(ceil(j m / d) - 1, 2), with C(a, 2) = 0 for a < 2.
    """
    points = multiple_points(arrangement)
    d = arrangement.d
    entries = {}
    for j in range(1, d):
        value = _choose2(j - 1) - sum(
            _choose2(_ceil(Fraction(j * point.multiplicity, d)) - 1)
            for point in points
            if point.multiplicity >= 3
        )
        if value < 0:
            raise InconsistencyError(f"Negative spectral multiplicity at {j}/{d}.")
        entries[Fraction(j, d)] = value
    return SpectrumTable(d=d, entries=entries)


def equivalence_report(arrangement: CentralArrangement) -> EquivalenceReport:
    """
    Evaluate the equivalent conditions independently and require them to agree.
    Condition (i) is read off the spectrum: off-diagonal Hodge numbers of H^2 are
    exactly the spectral multiplicities on (0, 1).
    """
    _require_plane(arrangement)
    decomposition = irreducible_decomposition(arrangement)
    spectrum = spectrum_unit_interval(arrangement)
    charpoly = characteristic_polynomial(build_lattice(arrangement))
    report = EquivalenceReport(
        tate_h2=spectrum.vanishes(),
        reducible=decomposition.is_reducible,
        trivial_monodromy=decomposition.gcd == 1,
        spectrum_vanishes=spectrum.vanishes(),
        square_divides_charpoly=(T_MINUS_ONE * T_MINUS_ONE).divides(charpoly),
    )
    if not report.all_agree:
        raise InconsistencyError(
            f"Equivalent conditions disagree on {arrangement.name or 'arrangement'}: "
            f"{report.model_dump()}."
        )
    return report

