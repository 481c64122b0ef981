"""
Exact central hyperplane arrangements defined over the rationals.
Hyperplanes are stored by their canonical normal: a primitive integer vector whose
first nonzero entry is positive, so that two hyperplanes are equal exactly when
their normals are.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from milnorcount.arrangement.serialized_data import SerializedArrangement
from milnorcount.exceptions import ArrangementError, PreconditionError
from milnorcount.linalg import (
    coordinates_in_basis,
    determinant,
    primitive_integer_vector,
    rank,
    rref,
)


def parse_rational(text: str) -> Fraction:
    """
    Parse an integer "a" or a fraction "a/b" written in a document.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ArrangementError(f"Invalid rational coefficient {text!r}.")


class Hyperplane(BaseModel):
    """
    A linear hyperplane through the origin, given by its canonical normal vector.
    """

    model_config = ConfigDict(frozen=True)

    normal: Tuple[int, ...]

    @model_validator(mode="after")
    def check_canonical(self) -> Hyperplane:
        if all(entry == 0 for entry in self.normal):
            raise ArrangementError("A hyperplane normal cannot be zero.")
        primitive, _ = primitive_integer_vector(self.normal)
        if primitive != self.normal:
            raise ArrangementError(
                f"Normal {self.normal} is not canonical, expected {primitive}."
            )
        return self

    @staticmethod
    def from_rationals(coefficients: Sequence) -> Hyperplane:
        """
        Clear denominators and normalize sign and content.
        """
        if all(Fraction(c) == 0 for c in coefficients):
            raise ArrangementError("A hyperplane normal cannot be zero.")
        primitive, _ = primitive_integer_vector(coefficients)
        return Hyperplane(normal=primitive)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def evaluate(self, point: Sequence[int]) -> int:
        return sum(a * x for a, x in zip(self.normal, point))


class CentralArrangement(BaseModel):
    """
    A central arrangement of d >= 1 distinct hyperplanes in an ambient space of
    dimension `dim` (n+1 in the usual notation). The defining polynomial Q is the
    product of the canonical linear forms, in list order.
    """

    model_config = ConfigDict(frozen=True)

    dim: int
    hyperplanes: Tuple[Hyperplane, ...]
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_arrangement(self) -> CentralArrangement:
        if self.dim < 1:
            raise ArrangementError("Ambient dimension must be at least 1.")
        if len(self.hyperplanes) < 1:
            raise ArrangementError("An arrangement needs at least one hyperplane.")
        seen = {}
        for index, hyperplane in enumerate(self.hyperplanes):
            if hyperplane.dim != self.dim:
                raise ArrangementError(
                    f"Hyperplane {index} has {hyperplane.dim} coefficients, expected "
                    f"{self.dim}."
                )
            if hyperplane.normal in seen:
                raise ArrangementError(
                    f"Hyperplanes {seen[hyperplane.normal]} and {index} coincide after "
                    f"canonicalization (the defining polynomial is not reduced)."
                )
            seen[hyperplane.normal] = index
        return self

    @staticmethod
    def from_normals(
        normals: Sequence[Sequence], name: Optional[str] = None
    ) -> CentralArrangement:
        """
        Build an arrangement from rational normal vectors, canonicalizing each of them.
        """
        rows = [list(row) for row in normals]
        if not rows:
            raise ArrangementError("An arrangement needs at least one hyperplane.")
        lengths = {len(row) for row in rows}
        if len(lengths) != 1:
            raise ArrangementError(
                f"Ragged hyperplane rows: found lengths {sorted(lengths)}."
            )
        hyperplanes = []
        for index, row in enumerate(rows):
            if all(Fraction(entry) == 0 for entry in row):
                raise ArrangementError(f"Hyperplane {index} has a zero normal.")
            hyperplanes.append(Hyperplane.from_rationals(row))
        return CentralArrangement(
            dim=lengths.pop(), hyperplanes=tuple(hyperplanes), name=name
        )

    @property
    def d(self) -> int:
        return len(self.hyperplanes)

    @property
    def normals(self) -> List[Tuple[int, ...]]:
        return [hyperplane.normal for hyperplane in self.hyperplanes]

    @property
    def rank(self) -> int:
        return rank(self.normals)

    def subarrangement(self, indices: Sequence[int]) -> List[Tuple[int, ...]]:
        return [self.hyperplanes[i].normal for i in indices]

    def to_serialized(self) -> SerializedArrangement:
        return SerializedArrangement(
            name=self.name,
            hyperplanes=[[str(entry) for entry in normal] for normal in self.normals],
        )


def parse_arrangement(document) -> CentralArrangement:
    """
    Turn an arrangement document (a mapping or a SerializedArrangement) into a
    canonical central arrangement.
    :param document: mapping with a `hyperplanes` list of lists of rational strings
    and an optional `name`.
    :return: the canonicalized arrangement. Duplicate hyperplanes are rejected.
    """
    if not isinstance(document, SerializedArrangement):
        document = SerializedArrangement.from_dict(document)
    rows = [[parse_rational(entry) for entry in row] for row in document.hyperplanes]
    return CentralArrangement.from_normals(rows, name=document.name)


def serialize_arrangement(arrangement: CentralArrangement) -> dict:
    return arrangement.to_serialized().to_dict()


def is_essential(arrangement: CentralArrangement) -> bool:
    """
    An arrangement is essential when its normals span the ambient space, i.e. the
    hyperplanes only meet at the origin.
    """
    return arrangement.rank == arrangement.dim


def require_essential(arrangement: CentralArrangement) -> None:
    if not is_essential(arrangement):
        raise PreconditionError(
            f"Arrangement {arrangement.name or ''} is not essential: rank "
            f"{arrangement.rank} < ambient dimension {arrangement.dim}. Use "
            f"essentialize first."
        )


def essentialize(arrangement: CentralArrangement) -> CentralArrangement:
    """
    Restrict the normals to a rational basis of their span. The basis is the reduced
    echelon basis of the normal matrix, so the coordinates of each normal are its
    entries on the pivot columns; on essential input this is the identity.
    """
    _, pivots = rref(arrangement.normals)
    restricted = [coordinates_in_basis(pivots, normal) for normal in arrangement.normals]
    return CentralArrangement.from_normals(restricted, name=arrangement.name)


def product(
    first: CentralArrangement, second: CentralArrangement, name: Optional[str] = None
) -> CentralArrangement:
    """
    Product arrangement in the direct sum of both ambient spaces: the normals of
    `first` followed by those of `second`, padded with zeros.
    """
    normals = [tuple(normal) + (0,) * second.dim for normal in first.normals]
    normals += [(0,) * first.dim + tuple(normal) for normal in second.normals]
    return CentralArrangement.from_normals(normals, name=name)


def change_coordinates(
    arrangement: CentralArrangement, matrix: Sequence[Sequence[int]]
) -> CentralArrangement:
    """
    Apply the invertible linear change of coordinates x = U y: each linear form
    a.x becomes (U^T a).y.
    """
    if len(matrix) != arrangement.dim or determinant(matrix) == 0:
        raise PreconditionError("Coordinate change must be an invertible square matrix.")
    normals = [
        [
            sum(matrix[row][col] * normal[row] for row in range(arrangement.dim))
            for col in range(arrangement.dim)
        ]
        for normal in arrangement.normals
    ]
    return CentralArrangement.from_normals(normals, name=arrangement.name)
