"""
Intersection lattice of a central arrangement, its Moebius function and the
polynomials derived from it (characteristic polynomial, count polynomial of the
projective complement, Poincare polynomial, Betti numbers).
"""
from __future__ import annotations

from typing import Dict, FrozenSet, List, Tuple

from pydantic import BaseModel, ConfigDict

from milnorcount.arrangement.arrangement import CentralArrangement
from milnorcount.exceptions import InconsistencyError, PreconditionError
from milnorcount.lattice.polynomial import T_MINUS_ONE, IntPolynomial
from milnorcount.linalg import RowSpace, primitive_integer_vector
from milnorcount.logger import logger


class Flat(BaseModel):
    """
    An intersection of hyperplanes, keyed by the closed set of hyperplanes containing it.
    """

    model_config = ConfigDict(frozen=True)

    members: FrozenSet[int]
    "Indices of every hyperplane containing the intersection."
    rank: int
    "Codimension of the intersection."


class IntersectionLattice(BaseModel):
    """
    All flats of an arrangement ordered by rank, with the Moebius value mu(0, X) of
    each flat (same position in `mobius`).
    """

    model_config = ConfigDict(frozen=True)

    arrangement: CentralArrangement
    flats: Tuple[Flat, ...]
    mobius: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.arrangement.dim

    @property
    def rank(self) -> int:
        return self.flats[-1].rank

    @property
    def is_essential(self) -> bool:
        return self.rank == self.dim

    def mobius_of(self, members: FrozenSet[int]) -> int:
        return self.mobius[self._index()[frozenset(members)]]

    def _index(self) -> Dict[FrozenSet[int], int]:
        return {flat.members: position for position, flat in enumerate(self.flats)}

    def require_essential(self) -> None:
        if not self.is_essential:
            raise PreconditionError(
                f"Lattice of rank {self.rank} in dimension {self.dim}: the arrangement "
                f"is not essential."
            )


def _covering_flats(
    flat: Flat, space: RowSpace, normals: List[Tuple[int, ...]]
) -> Dict[FrozenSet[int], RowSpace]:
    """
    Flats covering `flat`: reduce every other normal against the span of the flat;
    two normals give the same covering flat exactly when their residuals are
    proportional.
    """
    groups: Dict[Tuple[int, ...], List[int]] = {}
    residuals = {}
    for index, normal in enumerate(normals):
        if index in flat.members:
            continue
        residual = space.reduce(normal)
        direction, _ = primitive_integer_vector(residual)
        groups.setdefault(direction, []).append(index)
        residuals.setdefault(direction, residual)
    covers = {}
    for direction, indices in groups.items():
        extended = space.copy()
        extended.add(residuals[direction])
        covers[flat.members | frozenset(indices)] = extended
    return covers


def build_lattice(arrangement: CentralArrangement) -> IntersectionLattice:
    """
    Enumerate all flats breadth-first by rank, each one represented by its closure,
    then compute Moebius values top-down by the defining recursion.
    :param arrangement: a central arrangement.
    :return: the intersection lattice.
    """
    normals = arrangement.normals
    bottom = Flat(members=frozenset(), rank=0)
    flats = [bottom]
    level = {bottom.members: RowSpace(arrangement.dim)}
    for current_rank in range(1, arrangement.dim + 1):
        next_level: Dict[FrozenSet[int], RowSpace] = {}
        for members, space in level.items():
            flat = Flat(members=members, rank=current_rank - 1)
            for cover, cover_space in _covering_flats(flat, space, normals).items():
                next_level.setdefault(cover, cover_space)
        if not next_level:
            break
        flats.extend(
            Flat(members=members, rank=current_rank)
            for members in sorted(next_level, key=sorted)
        )
        level = next_level
    mobius = _mobius_values(flats)
    logger.info(
        f"Intersection lattice of {arrangement.name or 'arrangement'}: {len(flats)} "
        f"flats, rank {flats[-1].rank}."
    )
    return IntersectionLattice(
        arrangement=arrangement, flats=tuple(flats), mobius=tuple(mobius)
    )


def _mobius_values(flats: List[Flat]) -> List[int]:
    mobius = []
    for position, flat in enumerate(flats):
        if flat.rank == 0:
            mobius.append(1)
            continue
        mobius.append(
            -sum(
                mobius[below]
                for below in range(position)
                if flats[below].rank < flat.rank and flats[below].members < flat.members
            )
        )
    return mobius


def check_mobius(lattice: IntersectionLattice) -> None:
    """
    Verify the Moebius recursion and Whitney's sign alternation on every flat.
    """
    for flat, value in zip(lattice.flats, lattice.mobius):
        if flat.rank == 0:
            continue
        total = sum(
            other_value
            for other, other_value in zip(lattice.flats, lattice.mobius)
            if other.members <= flat.members
        )
        if total != 0:
            raise InconsistencyError(f"Moebius recursion fails at {sorted(flat.members)}.")
        if (-1) ** flat.rank * value <= 0:
            raise InconsistencyError(f"Whitney alternation fails at {sorted(flat.members)}.")


def flats_of_rank(lattice: IntersectionLattice, rank: int) -> List[Flat]:
    return [flat for flat in lattice.flats if flat.rank == rank]


def rank_sizes(lattice: IntersectionLattice) -> List[int]:
    return [len(flats_of_rank(lattice, r)) for r in range(lattice.rank + 1)]


def characteristic_polynomial(lattice: IntersectionLattice) -> IntPolynomial:
    """
    chi(t) = sum over flats X of mu(X) t^dim(X); at good primes it counts the points
    of the affine complement.
    """
    lattice.require_essential()
    coefficients = [0] * (lattice.dim + 1)
    for flat, value in zip(lattice.flats, lattice.mobius):
        coefficients[lattice.dim - flat.rank] += value
    return IntPolynomial.from_coefficients(coefficients)


def projective_count_polynomial(lattice: IntersectionLattice) -> IntPolynomial:
    """
    Count polynomial of the projective complement: chi(t) / (t - 1).
    """
    return characteristic_polynomial(lattice).exact_quotient(T_MINUS_ONE)


def projective_euler_characteristic(lattice: IntersectionLattice) -> int:
    """
    Euler characteristic of the projective complement; zero exactly for reducible
    essential arrangements.
    """
    return projective_count_polynomial(lattice)(1)


def poincare_polynomial(lattice: IntersectionLattice) -> IntPolynomial:
    """
    Poincare polynomial of the affine complement, sum of |mu(X)| t^rank(X).
    """
    coefficients = [0] * (lattice.rank + 1)
    for flat, value in zip(lattice.flats, lattice.mobius):
        coefficients[flat.rank] += abs(value)
    return IntPolynomial.from_coefficients(coefficients)


def betti_from_count_poly(polynomial: IntPolynomial) -> List[int]:
    """
    Betti numbers of a projective complement from its count polynomial of degree n:
    b_m = (-1)^m * coefficient of t^(n-m), every class being of type (m, m).
    """
    n = polynomial.degree
    betti = [(-1) ** m * polynomial.coefficient(n - m) for m in range(n + 1)]
    if any(b < 0 for b in betti):
        raise PreconditionError(
            f"{polynomial.format()} has no alternating sign pattern: not the count "
            f"polynomial of an arrangement complement."
        )
    return betti
