"""Multivariate Laurent polynomials with integer coefficients.

A polynomial is stored as a mapping from exponent vectors (one signed integer
per ring variable) to nonzero integer coefficients. Polynomials are immutable;
every operation returns a new polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

Exponents = tuple[int, ...]


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LaurentRing:
    """A Laurent polynomial ring Z[x1^±1, ..., xk^±1] with named variables."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Duplicate variable names in {self.names}.")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"Unknown variable '{name}'.")

    def zero_exponents(self) -> Exponents:
        return (0,) * self.ngens

    def zero(self) -> LaurentPoly:
        return LaurentPoly(self, {})

    def one(self) -> LaurentPoly:
        return self.constant(1)

    def constant(self, c: int) -> LaurentPoly:
        return LaurentPoly(self, {self.zero_exponents(): c})

    def monomial(self, exponents: Mapping[str, int] | Exponents, coeff: int = 1):
        """Build coeff * prod(x ** e).

        Args:
            exponents: either a full exponent vector or a mapping from variable
                names to exponents (missing variables get exponent zero).
            coeff: the integer coefficient.
        """
        if isinstance(exponents, Mapping):
            exps = [0] * self.ngens
            for name, e in exponents.items():
                exps[self.index(name)] += e
            exponents = tuple(exps)
        return LaurentPoly(self, {tuple(exponents): coeff})

    def gen(self, name: str) -> LaurentPoly:
        return self.monomial({name: 1})

    def gens(self) -> tuple[LaurentPoly, ...]:
        return tuple(self.gen(name) for name in self.names)


class LaurentPoly:
    """Element of a LaurentRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms: Mapping[Exponents, int]):
        self.ring = ring
        self.terms = {exps: c for exps, c in terms.items() if c}

    # coercion helpers

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatch(
                    f"Cannot combine elements of {self.ring.names} and {other.ring.names}."
                )
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    # arithmetic

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return LaurentPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.ring, {exps: -c for exps, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return LaurentPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_unit():
                raise ValueError(f"Cannot invert the non-unit {self}.")
            ((exps, c),) = self.terms.items()
            return LaurentPoly(self.ring, {tuple(k * e for e in exps): c**-k})
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> LaurentPoly:
        return LaurentPoly(self.ring, {exps: c * v for exps, v in self.terms.items()})

    def exact_div(self, c: int) -> LaurentPoly:
        """Divide every coefficient by the integer c, which must divide them all."""
        return LaurentPoly(self.ring, {exps: v // c for exps, v in self.terms.items()})

    def shift(self, exps: Exponents) -> LaurentPoly:
        """Multiply by the monomial with exponent vector exps."""
        return LaurentPoly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """Units of a Laurent ring over Z are ±monomials."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        zero = self.ring.zero_exponents()
        return all(exps == zero for exps in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant.")
        return self.terms.get(self.ring.zero_exponents(), 0)

    def min_exponents(self) -> Exponents:
        if not self.terms:
            return self.ring.zero_exponents()
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> Exponents:
        if not self.terms:
            return self.ring.zero_exponents()
        return tuple(max(col) for col in zip(*self.terms))

    def content(self) -> int:
        """Non-negative gcd of all coefficients (zero for the zero polynomial)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def leading_term(self) -> tuple[Exponents, int]:
        """Leading term under the lexicographic order on the ring variables."""
        exps = max(self.terms)
        return exps, self.terms[exps]

    def variables(self) -> set[str]:
        """Names of the variables that occur with a nonzero exponent."""
        used = set()
        for exps in self.terms:
            used.update(self.ring.names[i] for i, e in enumerate(exps) if e)
        return used

    def coefficients_in(self, name: str) -> dict[int, LaurentPoly]:
        """Split into powers of one variable.

        Returns:
            A mapping from the exponent of `name` to the coefficient polynomial,
            which does not involve `name`.
        """
        idx = self.ring.index(name)
        parts: dict[int, dict[Exponents, int]] = {}
        for exps, c in self.terms.items():
            rest = exps[:idx] + (0,) + exps[idx + 1 :]
            parts.setdefault(exps[idx], {})[rest] = c
        return {k: LaurentPoly(self.ring, v) for k, v in parts.items()}

    def invert_var(self, name: str) -> LaurentPoly:
        """Substitute x -> x^-1 for the variable `name`."""
        idx = self.ring.index(name)
        return LaurentPoly(
            self.ring,
            {
                exps[:idx] + (-exps[idx],) + exps[idx + 1 :]: c
                for exps, c in self.terms.items()
            },
        )

    # printing

    def _format_monomial(self, exps: Exponents) -> str:
        factors = []
        for name, e in zip(self.ring.names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            monomial = self._format_monomial(exps)
            if not monomial:
                body = str(abs(c))
            elif abs(c) == 1:
                body = monomial
            else:
                body = f"{abs(c)}*{monomial}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Apply op ('add', 'sub' or 'mul') to two Laurent polynomials."""
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
        case _:
            raise ValueError(f"Unknown polynomial operation '{op}'.")


def common_min_exponents(polys: Iterable[LaurentPoly]) -> Exponents:
    """Componentwise minimum of the exponents of all nonzero polys."""
    mins = [p.min_exponents() for p in polys if p]
    if not mins:
        raise ValueError("All polynomials are zero.")
    return tuple(min(col) for col in zip(*mins))
