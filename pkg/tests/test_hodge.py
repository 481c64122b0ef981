import math
import random

import pytest

from milnorcount.arrangement.arrangement import CentralArrangement, product
from milnorcount.arrangement.builtins import (
    builtin_arrangement,
    generic_product_arrangement,
    random_arrangement,
    random_product_arrangement,
)
from milnorcount.exceptions import HodgeDataError, PreconditionError
from milnorcount.lattice.lattice import (
    build_lattice,
    projective_count_polynomial,
    projective_euler_characteristic,
)
from milnorcount.lattice.polynomial import IntPolynomial
from milnorcount.model.decompose import irreducible_decomposition
from milnorcount.model.hodge import (
    ClassGroup,
    complement_table,
    e_polynomial,
    eigenspace_poincare,
    generic_factor_table,
    katz_candidate,
    milnor_fiber_table,
    product_table,
    tate_check,
    torus_table,
    zeta_check,
)

A11_CANDIDATE = IntPolynomial.from_coefficients([-15, 60, -110, 119, -82, 36, -9, 1])


def table_of(arrangement):
    return milnor_fiber_table(irreducible_decomposition(arrangement))


def test_generic_factor_table():
    table = generic_factor_table(2)
    assert table.order == 4
    assert table.dimensions(0) == [1, 3, 3]
    assert table.part(2) == (ClassGroup(degree=2, weight=1, dim=1),)
    assert table.part(1) == (ClassGroup(degree=2, weight=None, dim=1),)
    assert not tate_check(table)
    assert zeta_check(table, 1)
    with pytest.raises(PreconditionError):
        generic_factor_table(3)


def test_a11_table():
    table = table_of(builtin_arrangement("@a11"))
    assert table.n == 7
    assert table.order == 2
    assert table.dimensions(0) == [1, 9, 36, 83, 120, 110, 60, 15]
    assert table.part(1) == (
        ClassGroup(degree=6, weight=3, dim=1),
        ClassGroup(degree=7, weight=4, dim=1),
    )
    assert tate_check(table)
    assert zeta_check(table, 0)
    assert e_polynomial(table) == A11_CANDIDATE
    assert katz_candidate(table)(5) == 11160
    assert eigenspace_poincare(table, 1).coefficients == (0, 0, 0, 0, 0, 0, 1, 1)


@pytest.mark.parametrize("u, v", [(1, 1), (2, 1), (1, 2)])
def test_minus_one_eigenspace(u, v):
    table = table_of(generic_product_arrangement(u, v))
    assert tate_check(table)
    assert zeta_check(table, 0)
    dims = table.dimensions(1)
    for j in range(u + v):
        assert dims[2 * u + 4 * v + j] == math.comb(u + v - 1, j)
    assert sum(dims) == 2 ** (u + v - 1)


def test_irreducible_generic_is_not_tate():
    table = table_of(builtin_arrangement("@g2"))
    assert not tate_check(table)
    with pytest.raises(HodgeDataError):
        e_polynomial(table)


def test_torus():
    table = torus_table(3)
    assert table.dimensions(0) == [1, 2, 1]
    assert e_polynomial(table).coefficients == (1, -2, 1)


def test_trivial_monodromy_candidate():
    arrangement = builtin_arrangement("@nearpencil:4")
    table = table_of(arrangement)
    assert table.order == 1
    assert katz_candidate(table) == projective_count_polynomial(build_lattice(arrangement))


def test_missing_eigenspace_data():
    four_lines = CentralArrangement.from_normals([[1, 0], [0, 1], [1, 1], [1, 2]])
    with pytest.raises(HodgeDataError):
        table_of(product(four_lines, four_lines))


def test_product_table_checks_orders():
    with pytest.raises(PreconditionError):
        product_table([generic_factor_table(2)], [6])
    with pytest.raises(HodgeDataError):
        generic_factor_table(2).part(7)


@pytest.mark.parametrize("seed", range(40))
def test_complement_tables(seed):
    rng = random.Random(seed)
    dim = rng.randint(2, 4)
    lattice = build_lattice(random_arrangement(rng, dim, rng.randint(dim, 7)))
    table = complement_table(lattice)
    assert e_polynomial(table) == projective_count_polynomial(lattice)
    assert zeta_check(table, projective_euler_characteristic(lattice))


@pytest.mark.parametrize("seed", range(40))
def test_trivial_monodromy_tables(seed):
    rng = random.Random(500 + seed)
    arrangement = random_product_arrangement(rng, [(1, 1), (rng.randint(2, 3), 4)])
    table = table_of(arrangement)
    lattice = build_lattice(arrangement)
    assert katz_candidate(table) == projective_count_polynomial(lattice)
    assert zeta_check(table, projective_euler_characteristic(lattice))
