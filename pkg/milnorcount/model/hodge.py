"""
Eigenspace cohomology tables of Milnor fibers and related varieties.
A table lists, for every monodromy eigenvalue exp(2 pi i k / order), the cohomology
classes by degree together with their Tate weight p (class of type (p, p)), or no
weight when the Hodge type is unknown. Product arrangements are handled by the
tensor decomposition over the eigenvalues of order d0 = GCD(d_1, ..., d_q).
"""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from milnorcount.exceptions import HodgeDataError, PreconditionError
from milnorcount.lattice.lattice import (
    IntersectionLattice,
    betti_from_count_poly,
    build_lattice,
    projective_count_polynomial,
)
from milnorcount.lattice.polynomial import IntPolynomial
from milnorcount.model.decompose import Decomposition, Factor, is_generic_factor


class ClassGroup(BaseModel):
    """
    `dim` independent classes in degree `degree`, all of type (weight, weight), or of
    unknown type when weight is None.
    """

    model_config = ConfigDict(frozen=True)

    degree: int
    weight: Optional[int]
    dim: int

    @property
    def typed(self) -> bool:
        return self.weight is not None


class CohomologyTable(BaseModel):
    """
    Cohomology of a smooth affine variety of complex dimension n, split by
    eigenvalue index k (eigenvalue exp(2 pi i k / order)).
    """

    model_config = ConfigDict(frozen=True)

    n: int
    order: int
    parts: Dict[int, Tuple[ClassGroup, ...]]

    def eigenvalues(self) -> List[int]:
        return sorted(self.parts)

    def part(self, index: int) -> Tuple[ClassGroup, ...]:
        if index not in self.parts:
            raise HodgeDataError(
                f"No cohomology data for eigenvalue exp(2 pi i {index}/{self.order})."
            )
        return self.parts[index]

    def dimensions(self, index: int) -> List[int]:
        """
        Dimensions of H^m for m = 0..n in the given eigenspace.
        """
        dims = [0] * (self.n + 1)
        for group in self.part(index):
            dims[group.degree] += group.dim
        return dims

    def total_dimension(self, index: int) -> int:
        return sum(self.dimensions(index))


def _merge(groups) -> Tuple[ClassGroup, ...]:
    totals: Dict[Tuple[int, Optional[int]], int] = defaultdict(int)
    for group in groups:
        if group.dim:
            totals[(group.degree, group.weight)] += group.dim
    keys = sorted(totals, key=lambda key: (key[0], key[1] is None, key[1] or 0))
    return tuple(ClassGroup(degree=key[0], weight=key[1], dim=totals[key]) for key in keys)


def _tensor(first: Sequence[ClassGroup], second: Sequence[ClassGroup]) -> Tuple[ClassGroup, ...]:
    return _merge(
        ClassGroup(
            degree=a.degree + b.degree,
            weight=a.weight + b.weight if a.typed and b.typed else None,
            dim=a.dim * b.dim,
        )
        for a in first
        for b in second
    )


def _diagonal_classes(betti: Sequence[int]) -> Tuple[ClassGroup, ...]:
    return _merge(ClassGroup(degree=m, weight=m, dim=b) for m, b in enumerate(betti))


def generic_factor_table(n: int) -> CohomologyTable:
    """
    Milnor fiber of G_n (n+2 generic hyperplanes in dimension n+1, n even).
    Eigenvalue 1 carries the cohomology of the projective complement, C(n+1, m) in
    degree m of type (m, m); every other eigenvalue of order n+2 carries one class
    in degree n, of type (n/2, n/2) for the eigenvalue -1 and of unknown type
    otherwise.
    """
    if n < 2 or n % 2:
        raise PreconditionError(f"Generic factor tables are known for even n >= 2, got {n}.")
    order = n + 2
    parts = {0: _diagonal_classes([math.comb(n + 1, m) for m in range(n + 1)])}
    for index in range(1, order):
        weight = n // 2 if 2 * index == order else None
        parts[index] = (ClassGroup(degree=n, weight=weight, dim=1),)
    return CohomologyTable(n=n, order=order, parts=parts)


def torus_table(q: int) -> CohomologyTable:
    """
    The torus (C*)^(q-1): C(q-1, k) classes of type (k, k) in degree k.
    """
    if q < 1:
        raise PreconditionError(f"Torus tables need q >= 1, got {q}.")
    return CohomologyTable(
        n=q - 1,
        order=1,
        parts={0: _diagonal_classes([math.comb(q - 1, k) for k in range(q)])},
    )


def complement_table(lattice: IntersectionLattice) -> CohomologyTable:
    """
    Projective complement of an essential arrangement: a single eigenvalue, H^m pure
    of type (m, m) with Betti numbers read off the count polynomial.
    """
    betti = betti_from_count_poly(projective_count_polynomial(lattice))
    return CohomologyTable(n=lattice.dim - 1, order=1, parts={0: _diagonal_classes(betti)})


def factor_table(factor: Factor) -> CohomologyTable:
    """
    Milnor fiber table of one irreducible factor. Generic factors of even dimension
    get their full table; a single hyperplane has a point as Milnor fiber; any other
    factor only carries its invariant part, which is the cohomology of its projective
    complement.
    """
    if factor.dim == 1:
        return torus_table(1)
    if is_generic_factor(factor) and (factor.dim - 1) % 2 == 0:
        return generic_factor_table(factor.dim - 1)
    invariant = complement_table(build_lattice(factor.arrangement))
    return CohomologyTable(n=invariant.n, order=factor.size, parts=invariant.parts)


def product_table(factors: Sequence[CohomologyTable], d_js: Sequence[int]) -> CohomologyTable:
    """
    Tensor decomposition of the Milnor fiber of a product arrangement: for every
    eigenvalue of order d0 = GCD(d_j), the torus cohomology tensored with the
    corresponding eigenparts of the factors. Weights add; an untyped tensor factor
    makes the product class untyped.
    """
    if len(factors) != len(d_js) or not factors:
        raise PreconditionError("One factor size is required per factor table.")
    for table, d_j in zip(factors, d_js):
        if table.order != d_j:
            raise PreconditionError(
                f"Factor table of eigenvalue order {table.order} given for a factor of size {d_j}."
            )
    d0 = math.gcd(*d_js)
    torus = torus_table(len(factors))
    parts = {}
    for index in range(d0):
        classes = torus.part(0)
        for table, d_j in zip(factors, d_js):
            classes = _tensor(classes, table.part(index * d_j // d0))
        if classes:
            parts[index] = classes
    return CohomologyTable(
        n=torus.n + sum(table.n for table in factors), order=d0, parts=parts
    )


def milnor_fiber_table(decomposition: Decomposition) -> CohomologyTable:
    """
    Milnor fiber table of an arrangement from the tables of its irreducible factors.
    """
    return product_table(
        [factor_table(factor) for factor in decomposition.factors],
        decomposition.factor_sizes,
    )


def tate_check(table: CohomologyTable) -> bool:
    """
    True when every class has a known type (p, p).
    """
    return all(group.typed for groups in table.parts.values() for group in groups)


def e_polynomial(table: CohomologyTable) -> IntPolynomial:
    """
    Hodge-Deligne polynomial in t = xy: by duality a class of type (p, p) in H^m
    contributes (-1)^m t^(n - p).
    """
    if not tate_check(table):
        raise HodgeDataError("The E-polynomial needs every class to be typed.")
    coefficients = [0] * (table.n + 1)
    for groups in table.parts.values():
        for group in groups:
            coefficients[table.n - group.weight] += (-1) ** group.degree * group.dim
    return IntPolynomial.from_coefficients(coefficients)


def katz_candidate(table: CohomologyTable) -> IntPolynomial:
    """
    The only polynomial that can count the points of the variety: P(t) = HD(t).
    """
    return e_polynomial(table)


def zeta_check(table: CohomologyTable, chi: int) -> bool:
    """
    Every eigenspace has alternating dimension sum equal to the Euler characteristic
    of the projective complement.
    """
    return all(
        sum((-1) ** group.degree * group.dim for group in groups) == chi
        for groups in table.parts.values()
    )


def eigenspace_poincare(table: CohomologyTable, index: int) -> IntPolynomial:
    return IntPolynomial.from_coefficients(table.dimensions(index))
