"""
Prime fields with precomputed lookup tables: quadratic characters, inverses and
discrete logarithms with respect to a fixed primitive root.
Tables are read-only numpy arrays, safe to share between counting threads.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List

import numpy as np
import sympy

from milnorcount.exceptions import PreconditionError


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class PrimeField:
    """
    The field F_p. `legendre_table[a]` is the Legendre symbol (a/p) for odd p (for
    p = 2 it is 1 on the unit and 0 on zero), `inverse[a]` the inverse of a nonzero a,
    `exp[k]` the k-th power of the primitive root and `log[a]` its discrete logarithm.
    """

    def __init__(self, p: int):
        if not sympy.isprime(p):
            raise PreconditionError(f"{p} is not a prime.")
        self.p = p
        elements = np.arange(p, dtype=np.int64)

        legendre_table = np.full(p, -1, dtype=np.int64)
        legendre_table[(elements[1:] * elements[1:]) % p] = 1
        legendre_table[0] = 0
        self.legendre_table = _read_only(legendre_table)

        self.generator = int(sympy.primitive_root(p)) if p > 2 else 1
        powers = np.ones(p - 1, dtype=np.int64)
        for k in range(1, p - 1):
            powers[k] = powers[k - 1] * self.generator % p
        self.exp = _read_only(powers)

        log = np.full(p, -1, dtype=np.int64)
        log[powers] = np.arange(p - 1, dtype=np.int64)
        self.log = _read_only(log)

        inverse = np.zeros(p, dtype=np.int64)
        inverse[powers] = powers[(-np.arange(p - 1)) % (p - 1)]
        self.inverse = _read_only(inverse)

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.p - 1

    def reduce(self, value) -> int:
        """
        Image of an integer or a rational with denominator prime to p.
        """
        if isinstance(value, (int, Fraction)):
            numerator, denominator = Fraction(value).as_integer_ratio()
        else:
            numerator, denominator = (int(x) for x in sympy.Rational(value).as_numer_denom())
        if denominator % self.p == 0:
            raise PreconditionError(f"{value} has no image in F_{self.p}.")
        return numerator * pow(denominator, -1, self.p) % self.p

    def is_square(self, a: int) -> bool:
        return self.legendre_table[a % self.p] == 1

    def coset_representatives(self, degree: int) -> List[int]:
        """
        One representative per coset of the subgroup of degree-th powers: the powers
        g^0, ..., g^(c-1) of the primitive root, with c = GCD(degree, p - 1).
        """
        cosets = np.gcd(degree, self.order)
        return [int(self.exp[c]) for c in range(cosets)]

    def coset_index(self, a: int, degree: int) -> int:
        return int(self.log[a % self.p]) % int(np.gcd(degree, self.order))


def legendre(a: int, field: PrimeField) -> int:
    """
    Legendre symbol (a/p): 0 for a = 0, +1 for nonzero squares, -1 otherwise.
    """
    return int(field.legendre_table[a % field.p])


def primes_in_range(first: int, last: int) -> List[int]:
    """Primes p with first <= p <= last."""
    return [int(p) for p in sympy.primerange(first, last + 1)]
