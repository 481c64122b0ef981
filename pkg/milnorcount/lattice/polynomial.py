"""
Integer polynomials in one variable t (characteristic polynomials, count polynomials,
E-polynomials). Arithmetic is delegated to sympy over ZZ; the coefficient tuple is
the canonical, hashable representation.
"""
from __future__ import annotations

from typing import Sequence, Tuple, Union

import sympy
from pydantic import BaseModel, ConfigDict, field_validator

from milnorcount.exceptions import InconsistencyError

t = sympy.Symbol("t")


class IntPolynomial(BaseModel):
    """
    Polynomial with arbitrary-precision integer coefficients, in ascending degree.
    The last coefficient is nonzero unless the polynomial is zero, in which case the
    tuple is empty.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...]

    @field_validator("coefficients", mode="before")
    @classmethod
    def strip_trailing_zeros(cls, value):
        coefficients = [int(c) for c in value]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return tuple(coefficients)

    @staticmethod
    def from_coefficients(coefficients: Sequence[int]) -> IntPolynomial:
        return IntPolynomial(coefficients=tuple(coefficients))

    @staticmethod
    def from_sympy(polynomial: Union[sympy.Poly, sympy.Expr]) -> IntPolynomial:
        polynomial = sympy.Poly(polynomial, t, domain=sympy.ZZ)
        return IntPolynomial(coefficients=tuple(reversed(polynomial.all_coeffs())))

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coefficients)) or [0], t, domain=sympy.ZZ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, degree: int) -> int:
        if 0 <= degree < len(self.coefficients):
            return self.coefficients[degree]
        return 0

    def __call__(self, value: int) -> int:
        result = 0
        for coefficient in reversed(self.coefficients):
            result = result * value + coefficient
        return result

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial.from_sympy(self.to_sympy() + other.to_sympy())

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial.from_sympy(self.to_sympy() - other.to_sympy())

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial.from_sympy(self.to_sympy() * other.to_sympy())

    def compose(self, inner: sympy.Expr) -> sympy.Expr:
        """
        Substitute an expression (e.g. 4*k + 3) for t, returning an expanded sympy
        expression.
        """
        return sympy.expand(self.to_sympy().as_expr().subs(t, inner))

    def exact_quotient(self, divisor: IntPolynomial) -> IntPolynomial:
        """
        Divide by `divisor`, requiring a zero remainder.
        """
        quotient, remainder = sympy.div(self.to_sympy(), divisor.to_sympy(), domain=sympy.ZZ)
        if not remainder.is_zero:
            raise InconsistencyError(
                f"{self.format()} is not divisible by {divisor.format()}."
            )
        return IntPolynomial.from_sympy(quotient)

    def divides(self, other: IntPolynomial) -> bool:
        _, remainder = sympy.div(other.to_sympy(), self.to_sympy(), domain=sympy.ZZ)
        return remainder.is_zero

    def format(self) -> str:
        """
        Ascending-degree text form with an explicit sign on every coefficient, e.g.
        "+3 -3*t +1*t^2". The zero polynomial prints as "0".
        """
        terms = []
        for degree, coefficient in enumerate(self.coefficients):
            if coefficient == 0:
                continue
            if degree == 0:
                terms.append(f"{coefficient:+d}")
            elif degree == 1:
                terms.append(f"{coefficient:+d}*t")
            else:
                terms.append(f"{coefficient:+d}*t^{degree}")
        return " ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.format()


T_MINUS_ONE = IntPolynomial(coefficients=(-1, 1))
