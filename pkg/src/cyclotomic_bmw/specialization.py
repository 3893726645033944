"""Evaluation homomorphisms from rational functions to Q or to Z/PZ."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from cyclotomic_bmw.laurent import LaurentPoly
from cyclotomic_bmw.ratfunc import RatFunc

# Mersenne prime used for modular evaluation
MODULUS = 2**61 - 1


class PoleAtPoint(ZeroDivisionError):
    pass


class MissingAssignment(KeyError):
    pass


class InvalidSpecialization(ValueError):
    pass


@dataclass(frozen=True)
class Specialization:
    """Values for the ring variables.

    With `modulus` set the values are residues and evaluation happens in the
    prime field; otherwise values are exact rationals.
    """

    assignment: Mapping[str, Fraction | int] = field(default_factory=dict)
    modulus: int | None = None

    def __post_init__(self):
        values = {}
        for name, value in self.assignment.items():
            if self.modulus is None:
                value = Fraction(value)
            else:
                value = int(value) % self.modulus
            if (name == "q" or name.startswith("u")) and value == 0:
                raise InvalidSpecialization(f"{name} must be nonzero.")
            values[name] = value
        if "q" in values:
            q = values["q"]
            if self.reduce(q * q - 1) == 0:
                raise InvalidSpecialization("q^2 must differ from 1.")
        object.__setattr__(self, "assignment", values)

    def reduce(self, value):
        return value if self.modulus is None else value % self.modulus

    def __getitem__(self, name: str):
        return self.assignment[name]

    def __contains__(self, name: str) -> bool:
        return name in self.assignment

    def power(self, name: str, e: int):
        try:
            value = self.assignment[name]
        except KeyError:
            raise MissingAssignment(f"No value for variable '{name}'.")
        if value == 0 and e < 0:
            raise PoleAtPoint(f"{name} = 0 raised to a negative power.")
        if self.modulus is None:
            return value**e
        return pow(value, e, self.modulus)


def evaluate_poly(f: LaurentPoly, s: Specialization):
    total = Fraction(0) if s.modulus is None else 0
    for exps, c in f.terms.items():
        term = c
        for name, e in zip(f.ring.names, exps):
            if e:
                term = s.reduce(term * s.power(name, e))
        total = s.reduce(total + term)
    return total


def specialize(f: RatFunc, s: Specialization):
    """Evaluate f at the point s.

    Returns:
        An exact Fraction, or an int residue when s.modulus is set.

    Raises:
        PoleAtPoint: the denominator vanishes at s.
        MissingAssignment: s does not assign a variable that occurs in f.
    """
    num = evaluate_poly(f.num, s)
    den = evaluate_poly(f.den, s)
    if den == 0:
        raise PoleAtPoint(f"The denominator of {f} vanishes at {dict(s.assignment)}.")
    if s.modulus is None:
        return num / den
    return num * pow(den, -1, s.modulus) % s.modulus


def specialize_ratfunc(f: RatFunc, s: Specialization, ring) -> RatFunc:
    """Substitute the values of s into f, keeping the variables s does not assign.

    The result lives in `ring`, which must contain every unassigned variable of
    f. Only rational (non-modular) specializations are supported.
    """
    if s.modulus is not None:
        raise InvalidSpecialization("Partial substitution needs rational values.")

    def substitute(poly: LaurentPoly) -> RatFunc:
        total = RatFunc(ring.zero())
        for exps, c in poly.terms.items():
            value = Fraction(c)
            kept = {}
            for name, e in zip(poly.ring.names, exps):
                if not e:
                    continue
                if name in s:
                    value *= s.power(name, e)
                else:
                    kept[name] = e
            total = total + RatFunc.constant(ring, value) * RatFunc(
                ring.monomial(kept)
            )
        return total

    den = substitute(f.den)
    if den.is_zero():
        raise PoleAtPoint(f"The denominator of {f} vanishes at {dict(s.assignment)}.")
    return substitute(f.num) / den
