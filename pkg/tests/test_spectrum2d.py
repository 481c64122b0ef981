import random
from fractions import Fraction

import pytest

from milnorcount.arrangement.arrangement import CentralArrangement
from milnorcount.arrangement.builtins import (
    builtin_arrangement,
    random_arrangement,
    random_product_arrangement,
)
from milnorcount.exceptions import PreconditionError
from milnorcount.model.spectrum2d import (
    equivalence_report,
    multiple_points,
    spectrum_unit_interval,
)

BRAID = CentralArrangement.from_normals(
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]], name="braid"
)


def test_near_pencil():
    arrangement = builtin_arrangement("@nearpencil:4")
    triple = [point for point in multiple_points(arrangement) if point.multiplicity == 3]
    assert len(triple) == 1
    assert triple[0].point == (0, 0, 1)
    assert triple[0].lines == (0, 1, 2)

    spectrum = spectrum_unit_interval(arrangement)
    assert spectrum.rows() == [(1, 0), (2, 0), (3, 0)]
    assert spectrum.vanishes()

    report = equivalence_report(arrangement)
    assert report.all_agree
    assert report.reducible and report.trivial_monodromy and report.tate_h2


def test_generic_lines():
    arrangement = builtin_arrangement("@g2")
    assert all(point.multiplicity == 2 for point in multiple_points(arrangement))
    spectrum = spectrum_unit_interval(arrangement)
    assert spectrum.entries[Fraction(3, 4)] == 1
    report = equivalence_report(arrangement)
    assert report.all_agree
    assert not report.reducible
    assert not report.square_divides_charpoly


def test_braid_arrangement():
    points = multiple_points(BRAID)
    assert sorted(point.multiplicity for point in points) == [2, 2, 2, 3, 3, 3, 3]
    spectrum = spectrum_unit_interval(BRAID)
    assert spectrum.rows() == [(1, 0), (2, 0), (3, 1), (4, 3), (5, 2)]
    assert not equivalence_report(BRAID).spectrum_vanishes


def test_triangle():
    report = equivalence_report(builtin_arrangement("@boolean:3"))
    assert report.all_agree
    assert report.reducible


def test_requires_plane():
    with pytest.raises(PreconditionError):
        spectrum_unit_interval(builtin_arrangement("@g4"))
    with pytest.raises(PreconditionError):
        multiple_points(CentralArrangement.from_normals([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))


@pytest.mark.parametrize("seed", range(200))
def test_equivalent_conditions(seed):
    rng = random.Random(1000 + seed)
    if seed % 3 == 0:
        arrangement = random_product_arrangement(rng, [(2, rng.randint(2, 7)), (1, 1)])
    else:
        arrangement = random_arrangement(rng, 3, rng.randint(3, 8), entry_bound=3)
    report = equivalence_report(arrangement)
    assert report.all_agree
    if seed % 3 == 0:
        assert report.reducible
