"""Fractions of Laurent polynomials.

Normalization only removes the integer content and fixes the sign of the
denominator; common polynomial factors are kept. Equality is decided by
cross-multiplication. Call `RatFunc.cancel` to remove common factors
explicitly when expressions are stored for reuse.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import ZZ
from sympy.polys.rings import ring as sympy_ring

from cyclotomic_bmw.laurent import LaurentPoly, LaurentRing, RingMismatch


class DivisionByZero(ZeroDivisionError):
    pass


class ParseError(ValueError):
    pass


class RatFunc:
    """Element of the fraction field of a LaurentRing."""

    __slots__ = ("num", "den")

    # equality is cross-multiplication, which is not compatible with hashing
    __hash__ = None

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = num.ring.one()
        if num.ring != den.ring:
            raise RingMismatch("Numerator and denominator live in different rings.")
        if den.is_zero():
            raise DivisionByZero("Zero denominator.")
        if num.is_zero():
            den = num.ring.one()
        else:
            shift = tuple(-e for e in den.min_exponents())
            num, den = num.shift(shift), den.shift(shift)
            g = math.gcd(num.content(), den.content())
            if g > 1:
                num, den = num.exact_div(g), den.exact_div(g)
            if den.leading_term()[1] < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    @property
    def ring(self) -> LaurentRing:
        return self.num.ring

    @classmethod
    def constant(cls, ring: LaurentRing, value: int | Fraction) -> RatFunc:
        value = Fraction(value)
        return cls(ring.constant(value.numerator), ring.constant(value.denominator))

    @classmethod
    def gen(cls, ring: LaurentRing, name: str) -> RatFunc:
        return cls(ring.gen(name))

    # coercion

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise RingMismatch(
                    f"Cannot combine elements of {self.ring.names} and {other.ring.names}."
                )
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.ring, other)
        return NotImplemented

    # arithmetic

    def __add__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def __mul__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise DivisionByZero("Division by the zero function.")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        return self.inverse() * other

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    # comparison

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant.")
        return Fraction(self.num.constant_value(), self.den.constant_value())

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    # transformations

    def invert_var(self, name: str) -> RatFunc:
        """Substitute x -> x^-1 for the variable `name`."""
        return RatFunc(self.num.invert_var(name), self.den.invert_var(name))

    def cancel(self) -> RatFunc:
        """Remove the polynomial gcd of numerator and denominator."""
        if self.is_zero() or self.den.is_unit() or self.den.is_constant():
            return self
        ring = self.ring
        # both parts multiplied by one monomial so that all exponents are >= 0
        shift = tuple(
            -min(a, b)
            for a, b in zip(self.num.min_exponents(), self.den.min_exponents())
        )
        R = _sympy_ring(ring.names)
        num = R.from_dict(self.num.shift(shift).terms)
        den = R.from_dict(self.den.shift(shift).terms)
        num, den = num.cancel(den)
        return RatFunc(
            LaurentPoly(ring, {exps: int(c) for exps, c in num.items()}),
            LaurentPoly(ring, {exps: int(c) for exps, c in den.items()}),
        )

    # printing

    def __str__(self) -> str:
        if self.is_constant():
            return str(self.to_fraction())
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


@functools.cache
def _sympy_ring(names: tuple[str, ...]):
    return sympy_ring(list(names), ZZ)[0]


def cancelled_sum(terms: Iterable[RatFunc], start: RatFunc) -> RatFunc:
    """start + sum(terms), cancelled after every addition."""
    total = start.cancel()
    for term in terms:
        total = (total + term).cancel()
    return total


def frac_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Apply op ('add', 'sub', 'mul' or 'div') to two rational functions."""
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
        case "div":
            return a / b
        case _:
            raise ValueError(f"Unknown fraction operation '{op}'.")


def frac_eq(a: RatFunc, b: RatFunc) -> bool:
    return a == b


_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_ratfunc(text: str, ring: LaurentRing) -> RatFunc:
    """Parse text such as `(q^2 - u1*u2)/(q - q^-1)` into a RatFunc.

    Raises:
        ParseError: the text is not a rational function of the ring variables.
    """
    symbols = sympy.symbols(list(ring.names)) if ring.names else []
    local_dict = {name: s for name, s in zip(ring.names, symbols)}
    try:
        expr = parse_expr(
            text, local_dict=local_dict, transformations=_TRANSFORMATIONS
        )
    except Exception as exc:
        # the tokenizer and the evaluator raise a wide range of exceptions
        raise ParseError(f"Cannot parse '{text}': {exc}")
    if not isinstance(expr, sympy.Expr):
        raise ParseError(f"'{text}' is not an expression.")
    unknown = {str(s) for s in expr.free_symbols} - set(ring.names)
    if unknown:
        raise ParseError(f"Unknown symbols in '{text}': {', '.join(sorted(unknown))}.")
    num, den = sympy.fraction(sympy.together(expr))
    try:
        num_terms = _polynomial_terms(num, symbols)
        den_terms = _polynomial_terms(den, symbols)
    except (sympy.PolynomialError, TypeError) as exc:
        raise ParseError(f"'{text}' is not a rational function: {exc}")
    denominators = [c.q for c in (*num_terms.values(), *den_terms.values())]
    scale = math.lcm(*denominators) if denominators else 1

    def to_laurent(terms):
        exps = {
            tuple(monom) if symbols else (): int(c * scale)
            for monom, c in terms.items()
        }
        return LaurentPoly(ring, exps)

    try:
        return RatFunc(to_laurent(num_terms), to_laurent(den_terms))
    except DivisionByZero:
        raise ParseError(f"'{text}' has a zero denominator.")


def _polynomial_terms(expr, symbols) -> dict[tuple[int, ...], sympy.Rational]:
    if symbols:
        poly = sympy.Poly(expr, *symbols, domain="QQ")
        return {monom: sympy.Rational(c) for monom, c in poly.as_dict().items()}
    value = sympy.Rational(expr)
    return {(): value} if value else {}
