"""Truncated power series expansions of rational functions in one variable."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

from cyclotomic_bmw.ratfunc import RatFunc

logger = logging.getLogger(__name__)

Direction = Literal["infinity", "zero"]


class NotExpandable(ValueError):
    pass


@dataclass(frozen=True)
class SeriesExpansion:
    """Coefficients c_0..c_{N-1} of sum c_a * var^(-a) or sum c_a * var^a.

    The coefficients are rational functions which do not involve `var`.
    """

    var: str
    direction: Direction
    coeffs: tuple[RatFunc, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, a: int) -> RatFunc:
        return self.coeffs[a]

    def _check_compatible(self, other: SeriesExpansion):
        if (self.var, self.direction) != (other.var, other.direction):
            raise ValueError("Series expand in different variables or directions.")

    def __add__(self, other: SeriesExpansion) -> SeriesExpansion:
        self._check_compatible(other)
        return SeriesExpansion(
            self.var,
            self.direction,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __mul__(self, other) -> SeriesExpansion:
        if not isinstance(other, SeriesExpansion):
            return SeriesExpansion(
                self.var, self.direction, tuple(c * other for c in self.coeffs)
            )
        self._check_compatible(other)
        N = min(self.order, other.order)
        coeffs = []
        for a in range(N):
            total = self.coeffs[0] * other.coeffs[a]
            for i in range(1, a + 1):
                total = total + self.coeffs[i] * other.coeffs[a - i]
            coeffs.append(total.cancel())
        return SeriesExpansion(self.var, self.direction, tuple(coeffs))

    __rmul__ = __mul__

    def resum(self) -> RatFunc:
        """The truncated sum as a rational function of `var`."""
        ring = self.coeffs[0].ring
        sign = -1 if self.direction == "infinity" else 1
        total = RatFunc(ring.zero())
        for a, c in enumerate(self.coeffs):
            total = total + c * RatFunc(ring.monomial({self.var: sign * a}))
        return total


def expand_series(f: RatFunc, var: str, direction: Direction, order: int):
    """Expand f at var = infinity (powers of var^-1) or at var = 0.

    Args:
        f: a rational function.
        var: the expansion variable.
        direction: "infinity" or "zero".
        order: the number of coefficients N to compute.

    Returns:
        A SeriesExpansion with exactly `order` coefficients.

    Raises:
        NotExpandable: f has a polar part at the expansion point.
    """
    ring = f.ring
    num = f.num.coefficients_in(var)
    den = f.den.coefficients_in(var)
    if direction == "infinity":
        # rewrite in s = var^-1 after dividing by the top power of var
        top = max(den)
        if f.num and max(num) > top:
            raise NotExpandable(f"{f} has a pole at {var} = infinity.")
        num_s = {top - k: c for k, c in num.items()}
        den_s = {top - k: c for k, c in den.items()}
    elif direction == "zero":
        low = min(den)
        if f.num and min(num) < low:
            raise NotExpandable(f"{f} has a pole at {var} = 0.")
        num_s = {k - low: c for k, c in num.items()}
        den_s = {k - low: c for k, c in den.items()}
    else:
        raise ValueError(f"Unknown expansion direction '{direction}'.")

    inv_d0 = RatFunc(ring.one(), den_s[0])
    zero = ring.zero()
    # c_a = (n_a - sum_{i=1..a} d_i c_{a-i}) / d_0
    coeffs: list[RatFunc] = []
    for a in range(order):
        c = RatFunc(num_s.get(a, zero))
        for i in range(1, a + 1):
            d_i = den_s.get(i)
            if d_i is not None:
                c = c - coeffs[a - i] * d_i
        coeffs.append((c * inv_d0).cancel())
    logger.debug("Expanded %s at %s = %s to order %d", f, var, direction, order)
    return SeriesExpansion(var, direction, tuple(coeffs))
