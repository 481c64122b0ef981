"""
Irreducible decomposition of an essential central arrangement, order of the
monodromy and the triviality decision.
The finest partition of the hyperplanes into blocks whose spans form a direct sum
is the partition into connected components of the linear matroid of the normals.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from milnorcount.arrangement.arrangement import CentralArrangement, require_essential
from milnorcount.exceptions import InconsistencyError
from milnorcount.lattice.lattice import build_lattice, projective_euler_characteristic
from milnorcount.linalg import primitive_integer_vector, rank, rref
from milnorcount.logger import logger


class Factor(BaseModel):
    """
    One irreducible factor, realized in the coordinates y_k = <b_k, x> where the b_k
    are the block's basis normals. Its defining polynomial satisfies
    Q_block(x) = scale * Q_factor(y).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    members: Tuple[int, ...]
    "Indices, in the original arrangement, of the hyperplanes of this block."
    basis: Tuple[int, ...]
    "Members whose normals are used as coordinates of the factor."
    arrangement: CentralArrangement
    "The factor as an essential arrangement of its own."
    scale: Fraction
    "Product of the rational constants relating each member's form to its canonical form in factor coordinates."

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def dim(self) -> int:
        return self.arrangement.dim


class Decomposition(BaseModel):
    """
    The arrangement as a product A_1 x ... x A_q of irreducible factors, blocks
    ordered by their smallest member.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    arrangement: CentralArrangement
    factors: Tuple[Factor, ...]

    @property
    def q(self) -> int:
        return len(self.factors)

    @property
    def blocks(self) -> List[Tuple[int, ...]]:
        return [factor.members for factor in self.factors]

    @property
    def factor_sizes(self) -> List[int]:
        return [factor.size for factor in self.factors]

    @property
    def gcd(self) -> int:
        return math.gcd(*self.factor_sizes)

    @property
    def scale(self) -> Fraction:
        return math.prod((factor.scale for factor in self.factors), start=Fraction(1))

    @property
    def is_reducible(self) -> bool:
        return self.q > 1


class TrivialityWitness(BaseModel):
    """
    Evidence behind the monodromy triviality verdict.
    """

    q: int
    factor_sizes: List[int]
    d0: int
    euler_characteristic: int
    "Euler characteristic of the projective complement (STV cross-check)."
    reducible: bool

    @property
    def trivial(self) -> bool:
        return self.d0 == 1


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, element: int) -> int:
        while self.parent[element] != element:
            self.parent[element] = self.parent[self.parent[element]]
            element = self.parent[element]
        return element

    def union(self, first: int, second: int) -> None:
        root_first, root_second = self.find(first), self.find(second)
        if root_first != root_second:
            self.parent[max(root_first, root_second)] = min(root_first, root_second)


def irreducible_decomposition(arrangement: CentralArrangement) -> Decomposition:
    """
    Compute the finest valid partition of the hyperplanes and realize each block as
    an arrangement defined over Q.
    An exact basis of the normals is chosen by row reduction of the matrix whose
    columns are the normals; the reduced column of each non-basis normal gives its
    fundamental circuit, and normals sharing a circuit are merged. Coloops end up as
    singleton blocks.
    :param arrangement: an essential central arrangement.
    :return: the decomposition.
    """
    require_essential(arrangement)
    d = arrangement.d
    columns = [list(row) for row in zip(*arrangement.normals)]
    reduced, pivots = rref(columns)
    pivot_row = {element: row for row, element in enumerate(pivots)}

    components = _UnionFind(d)
    for element in range(d):
        if element in pivot_row:
            continue
        for row, basis_element in enumerate(pivots):
            if reduced[row][element] != 0:
                components.union(element, basis_element)

    blocks: Dict[int, List[int]] = {}
    for element in range(d):
        blocks.setdefault(components.find(element), []).append(element)
    ordered_blocks = sorted(blocks.values(), key=lambda block: block[0])

    factors = []
    for block in ordered_blocks:
        basis = [element for element in block if element in pivot_row]
        normals = []
        scale = Fraction(1)
        for element in block:
            coefficients = [reduced[pivot_row[b]][element] for b in basis]
            primitive, mu = primitive_integer_vector(coefficients)
            normals.append(primitive)
            scale *= mu
        factors.append(
            Factor(
                members=tuple(block),
                basis=tuple(basis),
                arrangement=CentralArrangement.from_normals(
                    normals, name=f"{arrangement.name or 'factor'}[{block[0]}]"
                ),
                scale=scale,
            )
        )
    decomposition = Decomposition(arrangement=arrangement, factors=tuple(factors))
    logger.info(
        f"Decomposition of {arrangement.name or 'arrangement'}: q={decomposition.q}, "
        f"d={decomposition.factor_sizes}, d0={decomposition.gcd}."
    )
    return decomposition


def is_valid_partition(arrangement: CentralArrangement, partition: Sequence[Sequence[int]]) -> bool:
    """
    A partition is valid when the spans of its blocks form a direct sum of the
    ambient space: the block ranks add up to the ambient dimension.
    """
    return (
        sum(rank(arrangement.subarrangement(block)) for block in partition)
        == arrangement.dim
    )


def intersect_partitions(
    first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]
) -> List[Tuple[int, ...]]:
    """
    Common refinement of two partitions, empty intersections discarded, blocks
    ordered by smallest member.
    """
    blocks = [
        tuple(sorted(set(a) & set(b))) for a in first for b in second if set(a) & set(b)
    ]
    return sorted(blocks, key=lambda block: block[0])


def verify_decomposition(decomposition: Decomposition) -> None:
    """
    Runtime cross-checks: the partition is valid and every block, seen as an
    essential arrangement, has nonzero projective Euler characteristic.
    """
    arrangement = decomposition.arrangement
    if not is_valid_partition(arrangement, decomposition.blocks):
        raise InconsistencyError(f"Blocks {decomposition.blocks} do not form a direct sum.")
    if sum(decomposition.factor_sizes) != arrangement.d:
        raise InconsistencyError("Factor sizes do not add up to the number of hyperplanes.")
    for factor in decomposition.factors:
        if projective_euler_characteristic(build_lattice(factor.arrangement)) == 0:
            raise InconsistencyError(
                f"Block {list(factor.members)} is reducible: the partition is not the finest one."
            )


def monodromy_order(arrangement: CentralArrangement) -> int:
    """
    Order of the monodromy operator on the Milnor fiber cohomology: the GCD d0 of the
    factor sizes.
    """
    return irreducible_decomposition(arrangement).gcd


def is_monodromy_trivial(arrangement: CentralArrangement) -> Tuple[bool, TrivialityWitness]:
    """
    Decide whether the monodromy is trivial (d0 = 1), cross-checking reducibility of
    the partition against the vanishing of the projective Euler characteristic.
    """
    decomposition = irreducible_decomposition(arrangement)
    verify_decomposition(decomposition)
    euler = projective_euler_characteristic(build_lattice(arrangement))
    if decomposition.is_reducible != (euler == 0):
        raise InconsistencyError(
            f"Partition gives q={decomposition.q} but the projective Euler "
            f"characteristic is {euler}."
        )
    witness = TrivialityWitness(
        q=decomposition.q,
        factor_sizes=decomposition.factor_sizes,
        d0=decomposition.gcd,
        euler_characteristic=euler,
        reducible=decomposition.is_reducible,
    )
    return witness.trivial, witness


def is_generic_factor(factor: Factor) -> bool:
    """
    An irreducible factor with one hyperplane more than its dimension is in general
    position: up to coordinates it is G_m with m = dim - 1.
    """
    return factor.dim >= 2 and factor.size == factor.dim + 1
