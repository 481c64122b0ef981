"""
Point counts over prime fields: affine and projective complements, Milnor fibers
and fibers of arbitrary polynomials.
Three methods are available for Milnor fibers: chunked brute force over F_p^(n+1),
the factored count convolving the fiber counts of the irreducible factors over the
multiplicative group, and the same factored count with the quadratic fast path on
generic factors.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, FrozenSet, List, Literal, Optional, Sequence, Set, Tuple, Union

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict

from milnorcount.arrangement.arrangement import CentralArrangement, require_essential
from milnorcount.arrangement.builtins import generic_product_arrangement
from milnorcount.config import CountingConfig
from milnorcount.counting.field import PrimeField
from milnorcount.exceptions import (
    BudgetExceededError,
    InconsistencyError,
    PreconditionError,
)
from milnorcount.linalg import determinant
from milnorcount.logger import logger
from milnorcount.model.decompose import Decomposition, irreducible_decomposition

Method = Literal["brute", "factored", "fast"]
Evaluator = Callable[[np.ndarray], np.ndarray]


class CountResult(BaseModel):
    """
    Number of points over F_p, with the method that produced it.
    """

    model_config = ConfigDict(frozen=True)

    p: int
    value: int
    method: Method


class FiberCountTable(BaseModel):
    """
    Fiber counts n(a) = #{y : Q(y) = a} of one factor polynomial of degree d_j, stored
    for one representative g^c per coset of the d_j-th powers (c < GCD(d_j, p - 1)),
    g being the field's primitive root.
    """

    model_config = ConfigDict(frozen=True)

    factor_index: int
    p: int
    d_j: int
    counts: Tuple[int, ...]
    "counts[c] = n(g^c)."
    backend: Literal["brute", "fast"]

    @property
    def cosets(self) -> int:
        return len(self.counts)

    def count(self, a: int, field: PrimeField) -> int:
        """n(a) for any nonzero a."""
        if a % self.p == 0:
            raise PreconditionError("Fiber counts are tabulated for nonzero values only.")
        return self.counts[field.coset_index(a, self.d_j)]

    def expand(self) -> List[int]:
        """n(g^k) for every discrete logarithm k in Z/(p - 1)."""
        return [self.counts[k % self.cosets] for k in range(self.p - 1)]

    def total(self) -> int:
        """Sum of n(a) over all nonzero a: the affine complement count of the factor."""
        return sum(self.expand())


class SymmetricCountRecord(BaseModel):
    """
    Milnor fiber count of A_{1,1} at p = 4k + 3, p = 11 mod 12, from the two fiber
    counts of each factor: n1p = #{Q_1 = 1}, n1pp = #{Q_1 = nonsquare} and the same
    for Q_2. Both factor polynomials have two level-set classes at such primes.
    """

    p: int
    k: int
    n1p: int
    n1pp: int
    n2p: int
    n2pp: int
    A: int
    complement_sums_hold: bool
    "n1p + n1pp = 2(p^2 - 3p + 3) and n2p + n2pp = 2(p^4 - 5p^3 + 10p^2 - 10p + 5)."
    congruence_holds: bool
    "A = 2(2k + 1)(2 + n1p n2p - 3 n1p - 3 n2p) mod 8."


class FixedPointRecord(BaseModel):
    """
    Points of Q_1 = 1 with x1 = x2 and of Q_2 = 1 with x4 = x5, x6 = x7.
    """

    p: int
    fixed1: int
    fixed2: int

    @property
    def divisible_by_four(self) -> bool:
        return self.fixed1 % 4 == 0 and self.fixed2 % 4 == 0


def _support_blocks(normals: Sequence[Sequence[int]]) -> List[Tuple[List[int], List[int]]]:
    """
    Connected components of the bipartite graph linking a row to the columns where it
    is nonzero. Up to permutations the matrix is block diagonal along them.
    """
    dim = len(normals[0])
    unvisited = set(range(len(normals)))
    blocks = []
    while unvisited:
        start = min(unvisited)
        rows, columns = {start}, set()
        frontier = [start]
        while frontier:
            new_columns = {c for r in frontier for c in range(dim) if normals[r][c]} - columns
            columns |= new_columns
            frontier = [
                r for r in unvisited - rows if any(normals[r][c] for c in new_columns)
            ]
            rows.update(frontier)
        unvisited -= rows
        blocks.append((sorted(rows), sorted(columns)))
    return blocks


@lru_cache(maxsize=256)
def _bad_primes_of_matrix(normals: Tuple[Tuple[int, ...], ...]) -> FrozenSet[int]:
    primes: Set[int] = set()
    for rows, columns in _support_blocks(normals):
        minors = set()
        for size in range(1, min(len(rows), len(columns)) + 1):
            for row_subset in itertools.combinations(rows, size):
                for column_subset in itertools.combinations(columns, size):
                    value = determinant(
                        [[normals[r][c] for c in column_subset] for r in row_subset]
                    )
                    if value:
                        minors.add(abs(value))
        for value in minors:
            primes.update(sympy.factorint(value))
    return frozenset(int(p) for p in primes)


def bad_primes(arrangement: CentralArrangement) -> Set[int]:
    """
    Primes dividing a nonzero minor of some square submatrix of the normal matrix.
    Minors of a block-diagonal matrix are products of block minors, so blocks of the
    support graph are handled separately.
    """
    return set(_bad_primes_of_matrix(tuple(arrangement.normals)))


def require_good_prime(arrangement: CentralArrangement, field: PrimeField) -> None:
    if field.p in bad_primes(arrangement):
        raise PreconditionError(
            f"{field.p} is a bad prime for {arrangement.name or 'the arrangement'}."
        )


def _resolve(config: Optional[CountingConfig]) -> CountingConfig:
    return config if config is not None else CountingConfig()


def _value_histogram(
    evaluate: Evaluator, dim: int, p: int, config: CountingConfig
) -> List[int]:
    """
    Histogram of the values of a polynomial map over F_p^dim. The flattened index
    range [0, p^dim) is split into chunks whose partial histograms are summed as
    arbitrary-precision integers, in a thread pool when several threads are allowed.
    """
    total = p**dim
    if total > config.budget:
        raise BudgetExceededError(
            f"Enumerating F_{p}^{dim} needs {total} evaluations, over the budget of "
            f"{config.budget}."
        )

    def run(chunk: Tuple[int, int]) -> np.ndarray:
        start, stop = chunk
        index = np.arange(start, stop, dtype=np.int64)
        points = np.empty((stop - start, dim), dtype=np.int64)
        for k in range(dim):
            points[:, k] = index % p
            index //= p
        return np.bincount(evaluate(points), minlength=p)

    chunks = [
        (start, min(start + config.chunk_size, total))
        for start in range(0, total, config.chunk_size)
    ]
    logger.debug(f"Enumerating {total} points of F_{p}^{dim} in {len(chunks)} chunks.")
    if config.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            partials = list(executor.map(run, chunks))
    else:
        partials = [run(chunk) for chunk in chunks]

    histogram = [0] * p
    for partial in partials:
        for value, count in enumerate(partial.tolist()):
            histogram[value] += count
    return histogram


def _product_evaluator(normals: Sequence[Sequence[int]], p: int) -> Evaluator:
    forms = np.array(normals, dtype=np.int64) % p

    def evaluate(points: np.ndarray) -> np.ndarray:
        values = np.ones(len(points), dtype=np.int64)
        for form in forms:
            values = values * ((points @ form) % p) % p
        return values

    return evaluate


def _polynomial_evaluator(polynomial: sympy.Poly, field: PrimeField) -> Evaluator:
    p = field.p
    terms = [
        (exponents, field.reduce(coefficient))
        for exponents, coefficient in polynomial.terms()
    ]

    def evaluate(points: np.ndarray) -> np.ndarray:
        values = np.zeros(len(points), dtype=np.int64)
        for exponents, coefficient in terms:
            term = np.full(len(points), coefficient, dtype=np.int64)
            for k, exponent in enumerate(exponents):
                for _ in range(exponent):
                    term = term * points[:, k] % p
            values = (values + term) % p
        return values

    return evaluate


def count_affine_complement(
    arrangement: CentralArrangement, field: PrimeField, config: Optional[CountingConfig] = None
) -> CountResult:
    """
    #{x in F_p^(n+1) : Q(x) != 0} by enumeration, at a good prime.
    """
    require_good_prime(arrangement, field)
    histogram = _value_histogram(
        _product_evaluator(arrangement.normals, field.p), arrangement.dim, field.p, _resolve(config)
    )
    return CountResult(p=field.p, value=sum(histogram[1:]), method="brute")


def count_projective_complement(
    arrangement: CentralArrangement, field: PrimeField, config: Optional[CountingConfig] = None
) -> CountResult:
    affine = count_affine_complement(arrangement, field, config)
    if affine.value % (field.p - 1):
        raise InconsistencyError(
            f"Affine complement count {affine.value} is not divisible by p - 1 = {field.p - 1}."
        )
    return CountResult(p=field.p, value=affine.value // (field.p - 1), method="brute")


def count_milnor_fiber_bruteforce(
    arrangement: CentralArrangement, field: PrimeField, config: Optional[CountingConfig] = None
) -> CountResult:
    """
    #{x in F_p^(n+1) : Q(x) = 1} by enumeration. Valid at every prime.
    """
    histogram = _value_histogram(
        _product_evaluator(arrangement.normals, field.p), arrangement.dim, field.p, _resolve(config)
    )
    return CountResult(p=field.p, value=histogram[1 % field.p], method="brute")


def count_polynomial_fiber(
    polynomial: Union[sympy.Poly, sympy.Expr],
    field: PrimeField,
    config: Optional[CountingConfig] = None,
    value: int = 1,
) -> CountResult:
    """
    #{x in F_p^N : f(x) = value} for a polynomial with rational coefficients whose
    denominators are prime to p. Variables of a bare expression are ordered by name.
    """
    if not isinstance(polynomial, sympy.Poly):
        polynomial = sympy.Poly(polynomial, *sorted(polynomial.free_symbols, key=str))
    histogram = _value_histogram(
        _polynomial_evaluator(polynomial, field),
        len(polynomial.gens),
        field.p,
        _resolve(config),
    )
    return CountResult(p=field.p, value=histogram[value % field.p], method="brute")


def _generic_fiber_counts(
    normals: Sequence[Tuple[int, ...]], field: PrimeField, representatives: Sequence[int]
) -> Optional[List[int]]:
    """
    Fiber counts of Q = y_0 ... y_m <w, y> with every w_k nonzero mod p.
    A histogram H[c, s] of the product c and weighted sum s of the first m
    coordinates over (F_p*)^m is built one coordinate at a time; for fixed (c, s)
    the last coordinate solves w_m y^2 + s y - a/c = 0, which has
    1 + (s^2 + 4 w_m a / c | p) roots, none of them zero.
    Returns None when Q does not have this shape or p = 2.
    """
    p = field.p
    dim = len(normals[0])
    units = [normal for normal in normals if sum(1 for e in normal if e) == 1]
    others = [normal for normal in normals if sum(1 for e in normal if e) != 1]
    if p == 2 or dim < 2 or len(units) != dim or len(others) != 1:
        return None
    w = [e % p for e in others[0]]
    if any(e == 0 for e in w):
        return None

    dtype = np.int64 if 2 * p**dim < 2**62 else object
    elements = np.arange(p, dtype=np.int64)
    histogram = np.zeros((p, p), dtype=dtype)
    histogram[elements[1:], (w[0] * elements[1:]) % p] = 1
    for k in range(1, dim - 1):
        step = np.zeros_like(histogram)
        for y in range(1, p):
            shifted = histogram[(elements * field.inverse[y]) % p, :]
            step += np.roll(shifted, (w[k] * y) % p, axis=1)
        histogram = step

    inverse_c = field.inverse[elements[1:]]
    counts = []
    for a in representatives:
        discriminant = (elements[None, :] ** 2 + 4 * w[-1] * a * inverse_c[:, None]) % p
        roots = 1 + field.legendre_table[discriminant]
        counts.append(int((histogram[1:, :] * roots).sum()))
    return counts


def factor_fiber_counts(
    factor: CentralArrangement,
    d_j: int,
    field: PrimeField,
    config: Optional[CountingConfig] = None,
    factor_index: int = 0,
    fast: bool = True,
) -> FiberCountTable:
    """
    Fiber counts of the product of the factor's canonical forms, one per coset of the
    d_j-th powers: scaling y by t maps the fiber over a onto the fiber over t^d_j a.
    :param factor: an essential arrangement (a factor in its own coordinates).
    :param d_j: degree of the factor polynomial, its number of hyperplanes.
    :param fast: allow the quadratic fast path for generic factors.
    """
    require_essential(factor)
    if d_j != factor.d:
        raise PreconditionError(f"Factor of {factor.d} hyperplanes given with d_j = {d_j}.")
    representatives = field.coset_representatives(d_j)

    counts = _generic_fiber_counts(factor.normals, field, representatives) if fast else None
    if counts is not None:
        backend = "fast"
    else:
        backend = "brute"
        histogram = _value_histogram(
            _product_evaluator(factor.normals, field.p), factor.dim, field.p, _resolve(config)
        )
        for a in range(1, field.p):
            if histogram[a] != histogram[representatives[field.coset_index(a, d_j)]]:
                raise InconsistencyError(
                    f"Fiber counts of factor {factor_index} are not constant on the coset of {a}."
                )
        counts = [histogram[a] for a in representatives]
    logger.debug(
        f"Factor {factor_index} at p={field.p}: {len(counts)} cosets, backend {backend}."
    )
    return FiberCountTable(
        factor_index=factor_index, p=field.p, d_j=d_j, counts=tuple(counts), backend=backend
    )


def _cyclic_convolution(first: Sequence[int], second: Sequence[int]) -> List[int]:
    size = len(first)
    return [
        sum(first[i] * second[(k - i) % size] for i in range(size)) for k in range(size)
    ]


def count_milnor_fiber_factored(
    decomposition: Decomposition,
    field: PrimeField,
    config: Optional[CountingConfig] = None,
    fast: bool = True,
) -> CountResult:
    """
    #{Q = 1} as the sum over a_1 ... a_q = 1/scale of the products of factor fiber
    counts, where Q = scale * Q_1(y_1) ... Q_q(y_q) in factor coordinates. The sum is
    an iterated convolution over Z/(p - 1) through discrete logarithms.
    """
    arrangement = decomposition.arrangement
    require_good_prime(arrangement, field)
    target = pow(field.reduce(decomposition.scale), -1, field.p)
    tables = [
        factor_fiber_counts(factor.arrangement, factor.size, field, config, index, fast)
        for index, factor in enumerate(decomposition.factors)
    ]
    total = tables[0].expand()
    for table in tables[1:]:
        total = _cyclic_convolution(total, table.expand())
    value = total[int(field.log[target])]
    method = "fast" if any(table.backend == "fast" for table in tables) else "factored"
    return CountResult(p=field.p, value=value, method=method)


def count_affine_complement_factored(
    decomposition: Decomposition,
    field: PrimeField,
    config: Optional[CountingConfig] = None,
    fast: bool = True,
) -> CountResult:
    """
    #{Q != 0} as the product over factors of the summed fiber counts.
    """
    require_good_prime(decomposition.arrangement, field)
    tables = [
        factor_fiber_counts(factor.arrangement, factor.size, field, config, index, fast)
        for index, factor in enumerate(decomposition.factors)
    ]
    value = 1
    for table in tables:
        value *= table.total()
    method = "fast" if any(table.backend == "fast" for table in tables) else "factored"
    return CountResult(p=field.p, value=value, method=method)


def symmetric_fiber_count(
    field: PrimeField, config: Optional[CountingConfig] = None
) -> SymmetricCountRecord:
    """
    Count the Milnor fiber of A_{1,1} at p = 11 mod 12 through the two level-set
    classes of each factor, and cross-check it against the factored count.
    """
    p = field.p
    if p % 12 != 11:
        raise PreconditionError(f"The symmetric count needs p = 11 mod 12, got {p}.")
    decomposition = irreducible_decomposition(generic_product_arrangement(1, 1))
    first, second = (
        factor_fiber_counts(factor.arrangement, factor.size, field, config, index)
        for index, factor in enumerate(decomposition.factors)
    )
    nonsquare = field.generator
    n1p, n1pp = first.count(1, field), first.count(nonsquare, field)
    n2p, n2pp = second.count(1, field), second.count(nonsquare, field)
    k = (p - 3) // 4
    value = (p - 1) // 2 * (n1p * n2p + n1pp * n2pp)

    factored = count_milnor_fiber_factored(decomposition, field, config).value
    if value != factored:
        raise InconsistencyError(
            f"Symmetric count {value} differs from the factored count {factored} at p={p}."
        )
    return SymmetricCountRecord(
        p=p,
        k=k,
        n1p=n1p,
        n1pp=n1pp,
        n2p=n2p,
        n2pp=n2pp,
        A=value,
        complement_sums_hold=(
            n1p + n1pp == 2 * (p**2 - 3 * p + 3)
            and n2p + n2pp == 2 * (p**4 - 5 * p**3 + 10 * p**2 - 10 * p + 5)
        ),
        congruence_holds=(
            value % 8 == 2 * (2 * k + 1) * (2 + n1p * n2p - 3 * n1p - 3 * n2p) % 8
        ),
    )


def symmetric_fixed_point_counts(field: PrimeField) -> FixedPointRecord:
    """
    Points fixed by the coordinate swaps: t^2 x3 (2t + x3) = 1 becomes
    (x3 + t)^2 = t^2 + t^-2, and s^2 t^2 x8 (2s + 2t + x8) = 1 becomes
    (x8 + s + t)^2 = (s + t)^2 + (st)^-2.
    """
    p = field.p
    if p % 4 != 3:
        raise PreconditionError(f"Fixed point counts need p = 3 mod 4, got {p}.")
    units = np.arange(1, p, dtype=np.int64)
    inverse = field.inverse[units]
    legendre_table = field.legendre_table

    fixed1 = (1 + legendre_table[(units * units + inverse * inverse) % p]).sum()
    sums = (units[:, None] + units[None, :]) % p
    inverse_products = inverse[:, None] * inverse[None, :] % p
    fixed2 = (1 + legendre_table[(sums * sums + inverse_products * inverse_products) % p]).sum()
    return FixedPointRecord(p=p, fixed1=int(fixed1), fixed2=int(fixed2))
