import random

import pytest

from milnorcount.arrangement.arrangement import CentralArrangement, change_coordinates
from milnorcount.arrangement.builtins import (
    builtin_arrangement,
    random_arrangement,
    random_unimodular,
)
from milnorcount.exceptions import InconsistencyError, PreconditionError
from milnorcount.lattice.lattice import (
    betti_from_count_poly,
    build_lattice,
    characteristic_polynomial,
    check_mobius,
    flats_of_rank,
    poincare_polynomial,
    projective_count_polynomial,
    projective_euler_characteristic,
    rank_sizes,
)
from milnorcount.lattice.polynomial import T_MINUS_ONE, IntPolynomial

G2_PROJECTIVE = IntPolynomial.from_coefficients([3, -3, 1])
G4_PROJECTIVE = IntPolynomial.from_coefficients([5, -10, 10, -5, 1])


def test_generic_plane_arrangement():
    lattice = build_lattice(builtin_arrangement("@g2"))
    check_mobius(lattice)
    assert rank_sizes(lattice) == [1, 4, 6, 1]
    assert characteristic_polynomial(lattice).coefficients == (-3, 6, -4, 1)
    assert projective_count_polynomial(lattice) == G2_PROJECTIVE
    assert projective_euler_characteristic(lattice) == 1
    assert betti_from_count_poly(G2_PROJECTIVE) == [1, 3, 3]
    assert poincare_polynomial(lattice).coefficients == (1, 4, 6, 3)


def test_generic_arrangement_g4():
    lattice = build_lattice(builtin_arrangement("@g4"))
    assert projective_count_polynomial(lattice) == G4_PROJECTIVE
    assert betti_from_count_poly(G4_PROJECTIVE) == [1, 5, 10, 10, 5]
    assert projective_euler_characteristic(lattice) == 1


def test_boolean_arrangement():
    lattice = build_lattice(builtin_arrangement("@boolean:3"))
    assert characteristic_polynomial(lattice) == T_MINUS_ONE * T_MINUS_ONE * T_MINUS_ONE
    assert projective_euler_characteristic(lattice) == 0
    assert len(flats_of_rank(lattice, 2)) == 3


def test_near_pencil():
    lattice = build_lattice(builtin_arrangement("@nearpencil:4"))
    assert projective_count_polynomial(lattice).coefficients == (2, -3, 1)
    assert rank_sizes(lattice) == [1, 4, 4, 1]
    triple = frozenset({0, 1, 2})
    assert lattice.mobius_of(triple) == 2


def test_product_characteristic_polynomial():
    lattice = build_lattice(builtin_arrangement("@a11"))
    check_mobius(lattice)
    expected = T_MINUS_ONE * T_MINUS_ONE * G2_PROJECTIVE * G4_PROJECTIVE
    assert characteristic_polynomial(lattice) == expected
    assert projective_euler_characteristic(lattice) == 0
    assert len(lattice.flats) == 12 * 58


def test_non_essential():
    arrangement = CentralArrangement.from_normals([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    lattice = build_lattice(arrangement)
    assert lattice.rank == 2
    with pytest.raises(PreconditionError):
        characteristic_polynomial(lattice)


def test_betti_needs_alternating_signs():
    with pytest.raises(PreconditionError):
        betti_from_count_poly(IntPolynomial.from_coefficients([3, 3, 1]))


def test_exact_quotient():
    with pytest.raises(InconsistencyError):
        G2_PROJECTIVE.exact_quotient(T_MINUS_ONE)
    assert not T_MINUS_ONE.divides(G2_PROJECTIVE)


def test_polynomial_format():
    assert G2_PROJECTIVE.format() == "+3 -3*t +1*t^2"
    assert IntPolynomial.from_coefficients([0, 0]).format() == "0"
    assert G2_PROJECTIVE(5) == 13


@pytest.mark.parametrize("seed", range(40))
def test_lattice_invariants(seed):
    rng = random.Random(seed)
    dim = rng.randint(2, 4)
    arrangement = random_arrangement(rng, dim, rng.randint(dim, 7))
    lattice = build_lattice(arrangement)
    check_mobius(lattice)
    charpoly = characteristic_polynomial(lattice)
    assert charpoly(1) == 0
    assert charpoly.coefficient(dim) == 1
    assert charpoly.coefficient(dim - 1) == -arrangement.d

    projective = projective_count_polynomial(lattice)
    betti = IntPolynomial.from_coefficients(betti_from_count_poly(projective))
    assert poincare_polynomial(lattice) == IntPolynomial.from_coefficients([1, 1]) * betti

    changed = change_coordinates(arrangement, random_unimodular(rng, dim))
    assert characteristic_polynomial(build_lattice(changed)) == charpoly
