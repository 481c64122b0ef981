"""
Named arrangements usable from the command line as "@name" and seeded random
generators used by the property suites.
"""
from __future__ import annotations

import random
import re
from typing import List, Optional, Sequence

from milnorcount.arrangement.arrangement import (
    CentralArrangement,
    change_coordinates,
    is_essential,
    product,
)
from milnorcount.exceptions import ArrangementError


def generic_arrangement(n: int) -> CentralArrangement:
    """
    G_n: x_0 x_1 ... x_n (x_0 + ... + x_n), n+2 hyperplanes in general position in
    an ambient space of dimension n+1.
    """
    if n < 1:
        raise ArrangementError(f"G_n needs n >= 1, got {n}.")
    normals = [[int(i == j) for j in range(n + 1)] for i in range(n + 1)]
    normals.append([1] * (n + 1))
    return CentralArrangement.from_normals(normals, name=f"G{n}")


def boolean_arrangement(dim: int) -> CentralArrangement:
    """The coordinate hyperplanes of a space of dimension `dim`."""
    if dim < 1:
        raise ArrangementError(f"Boolean arrangement needs dimension >= 1, got {dim}.")
    normals = [[int(i == j) for j in range(dim)] for i in range(dim)]
    return CentralArrangement.from_normals(normals, name=f"boolean{dim}")


def product_of(factors: Sequence[CentralArrangement], name: Optional[str] = None) -> CentralArrangement:
    result = factors[0]
    for factor in factors[1:]:
        result = product(result, factor)
    return result.model_copy(update={"name": name})


def generic_product_arrangement(u: int, v: int) -> CentralArrangement:
    """
    A_{u,v}: u copies of G_2 followed by v copies of G_4, in disjoint sets of
    coordinates. A_{1,1} lives in dimension 8 and has 10 hyperplanes.
    """
    if u < 0 or v < 0 or u + v < 1:
        raise ArrangementError(f"A_(u,v) needs u, v >= 0 and u + v >= 1, got {u}, {v}.")
    factors = [generic_arrangement(2)] * u + [generic_arrangement(4)] * v
    return product_of(factors, name=f"A{u},{v}")


def near_pencil(d: int) -> CentralArrangement:
    """
    d-1 lines through (0:0:1) and the line z = 0: x, y, x+y, x+2y, ..., z.
    """
    if d < 3:
        raise ArrangementError(f"A near pencil needs at least 3 lines, got {d}.")
    normals = [[1, 0, 0], [0, 1, 0]] + [[1, k, 0] for k in range(1, d - 2)]
    normals.append([0, 0, 1])
    return CentralArrangement.from_normals(normals, name=f"nearpencil{d}")


def builtin_arrangement(spec: str) -> CentralArrangement:
    """
    Resolve a built-in arrangement name: @g2, @g4, @g:n, @a11, @a:u,v, @boolean:n,
    @nearpencil:d.
    """
    name = spec.lstrip("@").lower()
    patterns = [
        (r"g(\d+)|g:(\d+)", lambda m: generic_arrangement(int(m[0] or m[1]))),
        (r"a11", lambda m: generic_product_arrangement(1, 1)),
        (r"a:(\d+),(\d+)", lambda m: generic_product_arrangement(int(m[0]), int(m[1]))),
        (r"boolean:(\d+)", lambda m: boolean_arrangement(int(m[0]))),
        (r"nearpencil:(\d+)", lambda m: near_pencil(int(m[0]))),
    ]
    for pattern, constructor in patterns:
        match = re.fullmatch(pattern, name)
        if match:
            return constructor(match.groups())
    raise ArrangementError(
        f"Unknown built-in arrangement {spec!r}. Known: @g2, @g4, @g:n, @a11, @a:u,v, "
        f"@boolean:n, @nearpencil:d."
    )


def random_unimodular(rng: random.Random, dim: int, steps: int = 6) -> List[List[int]]:
    """
    Random integer matrix of determinant +-1, as a product of elementary operations.
    """
    matrix = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for _ in range(steps if dim > 1 else 0):
        source, target = rng.sample(range(dim), 2)
        factor = rng.choice([-2, -1, 1, 2])
        matrix[target] = [a + factor * b for a, b in zip(matrix[target], matrix[source])]
    rng.shuffle(matrix)
    return matrix


def random_arrangement(
    rng: random.Random,
    dim: int,
    d: int,
    entry_bound: int = 2,
    max_tries: int = 1000,
) -> CentralArrangement:
    """
    Draw d distinct hyperplanes with small integer normals until the arrangement is
    essential. Draws producing a zero normal or a repeated hyperplane are rejected.
    """
    for _ in range(max_tries):
        normals = [
            [rng.randint(-entry_bound, entry_bound) for _ in range(dim)] for _ in range(d)
        ]
        try:
            arrangement = CentralArrangement.from_normals(normals, name="random")
        except ArrangementError:
            continue
        if is_essential(arrangement):
            return arrangement
    raise ArrangementError(
        f"Could not draw an essential arrangement of {d} hyperplanes in dimension {dim}."
    )


def random_product_arrangement(
    rng: random.Random,
    factor_shapes: Sequence[tuple],
    entry_bound: int = 2,
) -> CentralArrangement:
    """
    Product of random essential factors of the given (dim, d) shapes, hidden behind a
    random unimodular change of coordinates. Such arrangements are reducible by
    construction.
    """
    factors = [random_arrangement(rng, dim, d, entry_bound) for dim, d in factor_shapes]
    arrangement = product_of(factors)
    matrix = random_unimodular(rng, arrangement.dim)
    return change_coordinates(arrangement, matrix).model_copy(update={"name": "random-product"})
