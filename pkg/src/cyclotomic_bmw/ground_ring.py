"""Parameter systems of cyclotomic BMW algebras and their delta sequences.

A parameter system consists of the label modulus r, the parameters rho and q,
the roots u_1..u_r of the cyclotomic relation and the sequence of loop values
delta_a for all integers a. The delta sequence is computed lazily and memoized
together with the way each entry was obtained.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, reduce
from typing import Literal, Sequence

from cyclotomic_bmw.laurent import LaurentRing
from cyclotomic_bmw.ratfunc import RatFunc, cancelled_sum

logger = logging.getLogger(__name__)

Mode = Literal["symbolic", "specialized"]


class DegenerateParameters(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class NonCanonicalRho(ValueError):
    pass


class InconsistentGammas(ArithmeticError):
    pass


class DeltaMemo:
    """Thread-safe cache of delta values keyed by index.

    Each entry records its source: "closed-form", "recursion", "explicit" or
    "negative-recursion". The first value stored for an index wins.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: dict[int, tuple[RatFunc, str]] = {}

    def get(self, a: int) -> tuple[RatFunc, str] | None:
        with self._lock:
            return self._entries.get(a)

    def fill(self, a: int, value: RatFunc, source: str) -> tuple[RatFunc, str]:
        with self._lock:
            return self._entries.setdefault(a, (value, source))

    def entries(self) -> dict[int, tuple[RatFunc, str]]:
        with self._lock:
            return dict(sorted(self._entries.items()))


@dataclass(frozen=True)
class GroundParams:
    r: int
    ring: LaurentRing
    q: RatFunc
    u: tuple[RatFunc, ...]
    rho: RatFunc
    mode: Mode = "symbolic"
    initial_deltas: tuple[RatFunc, ...] | None = None
    memo: DeltaMemo = field(default_factory=DeltaMemo, compare=False, repr=False)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r must be positive, got {self.r}.")
        if len(self.u) != self.r:
            raise ValueError(f"Expected {self.r} values for u, got {len(self.u)}.")
        if self.initial_deltas is not None and len(self.initial_deltas) != self.r:
            raise ValueError(
                f"Expected {self.r} initial deltas, got {len(self.initial_deltas)}."
            )
        for name, value in [("q", self.q), ("rho", self.rho)] + [
            (f"u{j}", u_j) for j, u_j in enumerate(self.u, start=1)
        ]:
            if value.is_zero():
                raise DegenerateParameters(f"{name} must be invertible.")
        if self.initial_deltas is not None and self.initial_deltas[0].is_zero():
            raise DegenerateParameters("delta_0 must be invertible.")

    @classmethod
    def symbolic(
        cls,
        r: int,
        rho: RatFunc | None = None,
        deltas: Sequence[RatFunc] | None = None,
    ) -> GroundParams:
        """Parameters over Q(q, u_1, ..., u_r) with the auxiliary variable t."""
        ring = LaurentRing(("q", *(f"u{j}" for j in range(1, r + 1)), "t"))
        q = RatFunc.gen(ring, "q")
        u = tuple(RatFunc.gen(ring, f"u{j}") for j in range(1, r + 1))
        if rho is None:
            rho = canonical_rho(r, u, q)
        return cls(
            r=r,
            ring=ring,
            q=q,
            u=u,
            rho=rho,
            mode="symbolic",
            initial_deltas=tuple(deltas) if deltas is not None else None,
        )

    @classmethod
    def specialized(
        cls,
        r: int,
        q: Fraction | int,
        u: Sequence[Fraction | int],
        rho: Fraction | int | None = None,
    ) -> GroundParams:
        """Parameters at rational values; only the variable t stays symbolic."""
        ring = LaurentRing(("t",))
        q_rf = RatFunc.constant(ring, q)
        u_rf = tuple(RatFunc.constant(ring, u_j) for u_j in u)
        rho_rf = (
            canonical_rho(r, u_rf, q_rf)
            if rho is None
            else RatFunc.constant(ring, rho)
        )
        return cls(r=r, ring=ring, q=q_rf, u=u_rf, rho=rho_rf, mode="specialized")

    def with_deltas(self, deltas: Sequence[RatFunc]) -> GroundParams:
        """Copy with explicit delta_0..delta_{r-1}; later entries by recursion."""
        return replace(self, initial_deltas=tuple(deltas), memo=DeltaMemo())

    def with_rho(self, rho: RatFunc) -> GroundParams:
        return replace(self, rho=rho, memo=DeltaMemo())

    @property
    def t(self) -> RatFunc:
        return RatFunc.gen(self.ring, "t")

    @property
    def p(self) -> RatFunc:
        """The product of all u_j."""
        return reduce(lambda x, y: x * y, self.u)

    @property
    def q_diff(self) -> RatFunc:
        """q - q^-1."""
        return self.q - self.q.inverse()

    @cached_property
    def a(self) -> tuple[RatFunc, ...]:
        """Signed elementary symmetric functions a_0..a_r of the u_j."""
        return tuple(signed_elementary(self.u, j) for j in range(self.r + 1))

    @cached_property
    def is_canonical(self) -> bool:
        return self.rho == canonical_rho(self.r, self.u, self.q)

    @cached_property
    def gammas(self) -> GammaVector:
        return compute_gammas(self)

    def constant(self, value: int | Fraction) -> RatFunc:
        return RatFunc.constant(self.ring, value)

    def delta(self, a: int) -> RatFunc:
        return self._delta_entry(a)[0]

    def delta_source(self, a: int) -> str:
        return self._delta_entry(a)[1]

    def _delta_entry(self, a: int) -> tuple[RatFunc, str]:
        hit = self.memo.get(a)
        if hit is not None:
            return hit
        if self.initial_deltas is not None and 0 <= a < self.r:
            value, source = self.initial_deltas[a], "explicit"
        elif a < 0:
            value, source = delta_negative(self, -a), "negative-recursion"
        elif self.initial_deltas is not None:
            value, source = delta_forward_recursion(self, a), "recursion"
        else:
            value, source = delta_closed_form(self, a), "closed-form"
        logger.debug("delta_%d filled from %s", a, source)
        return self.memo.fill(a, value.cancel(), source)


@dataclass(frozen=True)
class GammaVector:
    gamma: tuple[RatFunc, ...]
    gamma1: tuple[RatFunc, ...]
    gamma2: tuple[RatFunc, ...]
    simplified: tuple[RatFunc, ...] | None = None


def _product(factors, one: RatFunc) -> RatFunc:
    return reduce(lambda x, y: x * y, factors, one)


def signed_elementary(u: Sequence[RatFunc], j: int) -> RatFunc:
    """Return a_j = (-1)^(r-j) e_{r-j}(u_1, ..., u_r); a_r = 1.

    Raises:
        IndexOutOfRange: j is not in 0..r.
    """
    r = len(u)
    if not 0 <= j <= r:
        raise IndexOutOfRange(f"Index {j} outside 0..{r}.")
    one = RatFunc(u[0].ring.one())
    # e[k] is the k-th elementary symmetric function of the values seen so far
    e = [one] + [one * 0] * r
    for x in u:
        for k in range(r, 0, -1):
            e[k] = e[k] + e[k - 1] * x
    k = r - j
    return e[k] if k % 2 == 0 else -e[k]


def canonical_rho(r: int, u: Sequence[RatFunc], q: RatFunc) -> RatFunc:
    """prod(u_j) for odd r and q^-1 prod(u_j) for even r."""
    p = reduce(lambda x, y: x * y, u)
    return p if r % 2 else p / q


def check_u_conditions(p: GroundParams) -> list[str]:
    """List violated u-admissibility preconditions."""
    problems = []
    if p.q_diff.is_zero():
        problems.append("q - q^-1 = 0")
    for i in range(p.r):
        for j in range(i, p.r):
            if i != j and p.u[i] == p.u[j]:
                problems.append(f"u{i + 1} = u{j + 1}")
            if (p.u[i] * p.u[j]).is_one():
                problems.append(f"u{i + 1}*u{j + 1} = 1")
    return problems


def compute_gammas(p: GroundParams) -> GammaVector:
    """Solve sum_j gamma_j / (1 - u_i u_j) = 1/(1 - u_i^2) + 1/(rho (q^-1 - q)).

    The solution is assembled from the closed forms of its two parts. When rho
    is canonical the simplified product formula is computed as well and must
    agree.

    Raises:
        DegenerateParameters: some u_i = u_j (i != j), u_i u_j = 1 or q^2 = 1.
        InconsistentGammas: the two closed forms disagree.
    """
    problems = check_u_conditions(p)
    if problems:
        raise DegenerateParameters(", ".join(problems))
    one = p.constant(1)
    r, u, q = p.r, p.u, p.q
    gamma1, gamma2 = [], []
    for j in range(r):
        others = [l for l in range(r) if l != j]
        ratio = _product(((u[l] * u[j] - 1) / (u[j] - u[l]) for l in others), one)
        gamma1.append(
            ((1 - u[j] * u[j]) * _product((u[l] for l in others), one) * ratio).cancel()
        )
        gamma2.append((ratio if r % 2 else -u[j] * ratio).cancel())
    scale = (p.rho * (q.inverse() - q)).inverse()
    gamma = tuple((g1 * scale + g2).cancel() for g1, g2 in zip(gamma1, gamma2))

    simplified = None
    if p.is_canonical:
        simplified = []
        for j in range(r):
            shift = q.inverse() if r % 2 else q
            value = (
                p.rho
                * (u[j] - shift)
                * (u[j] + q)
                / (u[j] * u[j] * p.q_diff)
                * _product(
                    ((u[j] - u[l].inverse()) / (u[j] - u[l]) for l in range(r) if l != j),
                    one,
                )
            )
            simplified.append(value.cancel())
        for j, (g, s) in enumerate(zip(gamma, simplified), start=1):
            if g != s:
                raise InconsistentGammas(f"gamma_{j}: {g} differs from {s}.")
        simplified = tuple(simplified)
    return GammaVector(
        gamma=gamma, gamma1=tuple(gamma1), gamma2=tuple(gamma2), simplified=simplified
    )


def delta_closed_form(p: GroundParams, a: int) -> RatFunc:
    """sum_j gamma_j u_j^a."""
    return cancelled_sum(
        (g * u_j**a for g, u_j in zip(p.gammas.gamma, p.u)), p.constant(0)
    )


def delta_negative(p: GroundParams, j: int) -> RatFunc:
    """delta_{-j} from delta_1..delta_j and the previously computed negatives."""
    if j < 1:
        raise IndexOutOfRange(f"Negative delta index must be at least 1, got {j}.")
    rho_inv = p.rho.inverse()
    value = rho_inv * rho_inv * p.delta(j)
    if j >= 2:
        correction = cancelled_sum(
            (
                p.delta(k) * p.delta(k - j) - p.delta(2 * k - j)
                for k in range(1, j)
            ),
            p.constant(0),
        )
        value = value + (p.q.inverse() - p.q) * rho_inv * correction
    return value.cancel()


def delta_forward_recursion(p: GroundParams, a: int) -> RatFunc:
    """-sum_{j=0}^{r-1} a_j delta_{a-r+j}."""
    total = p.constant(0)
    for j in range(p.r):
        total = total - p.a[j] * p.delta(a - p.r + j)
    return total.cancel()


def ground_relation_residual(p: GroundParams) -> RatFunc:
    """rho^-1 - rho - (q^-1 - q)(delta_0 - 1), zero for a ground ring."""
    return (
        p.rho.inverse() - p.rho - (p.q.inverse() - p.q) * (p.delta(0) - 1)
    ).cancel()


def transformed_params(p: GroundParams, kind: str) -> GroundParams:
    """Apply (rho, q) -> (rho, -q^-1) ("invert-q") or (-rho, -q) ("negate").

    Both substitutions leave rho (q^-1 - q) and hence the gammas unchanged.
    """
    match kind:
        case "invert-q":
            return replace(p, q=-p.q.inverse(), memo=DeltaMemo())
        case "negate":
            return replace(p, q=-p.q, rho=-p.rho, memo=DeltaMemo())
        case _:
            raise ValueError(f"Unknown parameter transformation '{kind}'.")
