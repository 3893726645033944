"""Admissibility conditions on parameter systems.

Weak admissibility asks that the delta sequence satisfies the linear recurrence
with characteristic polynomial prod_j (x - u_j). The Wilcox-Yu conditions are a
family of linear relations between the a_j, rho, q and delta_1..delta_{r-1}, a
parity dependent relation between rho and a_0, and the recurrence itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from cyclotomic_bmw.datatypes import RelationResult, zero_check
from cyclotomic_bmw.ground_ring import (
    GroundParams,
    check_u_conditions,
    ground_relation_residual,
)
from cyclotomic_bmw.matrices import MatrixRF
from cyclotomic_bmw.ratfunc import RatFunc, cancelled_sum

logger = logging.getLogger(__name__)


@dataclass
class AdmissibilityReport:
    weakly_admissible: bool
    wilcox_yu_1: dict[int, bool]
    wilcox_yu_2: bool
    recursion_3: bool
    ground_relation: bool
    u_admissible: bool
    relations: list[RelationResult] = field(default_factory=list)

    @property
    def witnesses(self) -> list[RelationResult]:
        return [relation for relation in self.relations if not relation.passed]

    @property
    def ok(self) -> bool:
        return not self.witnesses


def weak_admissibility_residual(p: GroundParams, a: int) -> RatFunc:
    """sum_{k=0}^{r} a_k delta_{k+a}."""
    total = p.constant(0)
    for k in range(p.r + 1):
        total = total + p.a[k] * p.delta(k + a)
    return total.cancel()


def check_weak_admissibility(
    p: GroundParams, a_range: range | None = None
) -> tuple[bool, list[RelationResult]]:
    """Check the weak admissibility relation for every a in a_range.

    Args:
        p: the parameter system.
        a_range: indices to test, by default -r..r.

    Returns:
        A flag and one RelationResult per index.
    """
    if a_range is None:
        a_range = range(-p.r, p.r + 1)
    results = [
        zero_check(f"weak admissibility a={a}", weak_admissibility_residual(p, a))
        for a in a_range
    ]
    return all(result.passed for result in results), results


def _linear_constant(rho: RatFunc, q: RatFunc, a: list[RatFunc], l: int) -> RatFunc:
    """The part of the linear Wilcox-Yu relation for l that does not involve deltas."""
    r = len(a) - 1
    half = (r + 1) // 2
    value = rho * (a[l] - a[r - l] / a[0])
    correction = rho * 0
    for j in range(max(l + 1, half), (l + r) // 2 + 1):
        correction = correction - a[2 * j - l]
    for j in range((l + 1) // 2, min(l, half - 1) + 1):
        correction = correction + a[2 * j - l]
    return value + (q - q.inverse()) * correction


def wilcox_yu_linear_residual(p: GroundParams, l: int) -> RatFunc:
    a = list(p.a)
    total = _linear_constant(p.rho, p.q, a, l)
    deltas = p.constant(0)
    for j in range(1, p.r - l + 1):
        deltas = deltas + a[j + l] * p.delta(j)
    return (total + p.q_diff * deltas).cancel()


def wilcox_yu_rho_residual(p: GroundParams) -> RatFunc:
    """rho^-1 a_0 - rho a_0^-1 minus 0 (r odd) or q - q^-1 (r even)."""
    a0 = p.a[0]
    value = p.rho.inverse() * a0 - p.rho / a0
    if p.r % 2 == 0:
        value = value - p.q_diff
    return value.cancel()


def delta_recursion_residual(p: GroundParams, a: int) -> RatFunc:
    total = p.delta(a)
    for j in range(p.r):
        total = total + p.a[j] * p.delta(a - p.r + j)
    return total.cancel()


def check_wilcox_yu(
    p: GroundParams, recursion_window: int = 5, weak_range: range | None = None
) -> AdmissibilityReport:
    """Evaluate every admissibility relation exactly."""
    relations = []
    linear = {}
    for l in range(1, p.r):
        result = zero_check(
            f"Eq. (3.1), ℓ={l}",
            wilcox_yu_linear_residual(p, l),
            description="wilcox-yu linear",
        )
        linear[l] = result.passed
        relations.append(result)
    rho_result = zero_check(
        "Eq. (3.2)", wilcox_yu_rho_residual(p), description="wilcox-yu rho"
    )
    relations.append(rho_result)
    recursion = [
        zero_check(
            f"Eq. (3.3), a={a}",
            delta_recursion_residual(p, a),
            description="delta recursion",
        )
        for a in range(p.r, p.r + recursion_window)
    ]
    relations.extend(recursion)
    ground = zero_check("ground relation", ground_relation_residual(p))
    relations.append(ground)
    weak, weak_results = check_weak_admissibility(p, weak_range)
    relations.extend(weak_results)

    conditions = check_u_conditions(p)
    relations.extend(
        RelationResult(name="u-admissibility", passed=False, residual=problem)
        for problem in conditions
    )
    recursion_ok = all(result.passed for result in recursion)
    wilcox_yu_ok = all(linear.values()) and rho_result.passed and recursion_ok
    report = AdmissibilityReport(
        weakly_admissible=weak,
        wilcox_yu_1=linear,
        wilcox_yu_2=rho_result.passed,
        recursion_3=recursion_ok,
        ground_relation=ground.passed,
        u_admissible=wilcox_yu_ok and weak and ground.passed and not conditions,
        relations=relations,
    )
    logger.debug("Admissibility of r=%d: %d failing relations", p.r, len(report.witnesses))
    return report


def admissibility_matrix(a: list[RatFunc]) -> list[list[RatFunc]]:
    """Coefficients of the triangular system for x_j = (q - q^-1) delta_j.

    Row i (1 <= i <= r-1) is the linear relation for l = r - i; its
    entries are a_{j+r-i} for j <= i and zero above the diagonal.
    """
    r = len(a) - 1
    zero = a[0] * 0
    return [
        [a[j + r - i] if j <= i else zero for j in range(1, r)] for i in range(1, r)
    ]


def solve_deltas_from_admissibility(
    rho: RatFunc, q: RatFunc, a: list[RatFunc]
) -> list[RatFunc]:
    """Solve the linear Wilcox-Yu relations for delta_1..delta_{r-1}.

    The system is unitriangular since a_r = 1, so forward substitution gives
    the unique solution.
    """
    r = len(a) - 1
    matrix = admissibility_matrix(a)
    q_diff = q - q.inverse()
    x: list[RatFunc] = []
    for i in range(1, r):
        value = -_linear_constant(rho, q, a, r - i)
        for j in range(1, i):
            value = value - matrix[i - 1][j - 1] * x[j - 1]
        x.append(value.cancel())
    return [(x_j / q_diff).cancel() for x_j in x]


def check_gamma_system(p: GroundParams) -> list[RelationResult]:
    """The gammas solve their linear system and sum to delta_0."""
    u, gamma = p.u, p.gammas.gamma
    rhs_const = (p.rho * (p.q.inverse() - p.q)).inverse()
    results = []
    for i in range(p.r):
        total = cancelled_sum(
            (gamma[j] / (1 - u[i] * u[j]) for j in range(p.r)),
            -(1 - u[i] * u[i]).inverse() - rhs_const,
        )
        results.append(zero_check(f"gamma linear system i={i + 1}", total))
    total = cancelled_sum(gamma, -p.delta(0))
    results.append(zero_check("gamma sum equals delta_0", total))
    return results


def check_cauchy_and_residue_identities(p: GroundParams) -> list[RelationResult]:
    """Cauchy's determinant and the two identities behind the gamma formulas."""
    r, u = p.r, p.u
    one = p.constant(1)
    results = []

    cauchy = MatrixRF.from_function(r, lambda i, j: (1 - u[i] * u[j]).inverse())
    expected = one
    for i in range(r):
        for j in range(r):
            expected = expected / (1 - u[i] * u[j])
            if i < j:
                expected = expected * (u[i] - u[j]) * (u[i] - u[j])
    results.append(zero_check("cauchy determinant", (cauchy.det() - expected).cancel()))

    for i in range(r):
        total = -one
        for j in range(r):
            term = one
            for l in range(r):
                if l != i:
                    term = term * (u[l] * u[j] - 1)
                if l != j:
                    term = term * u[l] / (u[j] - u[l])
            total = (total + term).cancel()
        results.append(zero_check(f"first gamma identity i={i + 1}", total.cancel()))

    for i in range(r):
        total = -one
        for j in range(r):
            term = (1 - u[i] * u[i]) / (1 - u[i] * u[j])
            if r % 2 == 0:
                term = -term * u[j]
            for l in range(r):
                if l != j:
                    term = term * (u[l] * u[j] - 1) / (u[j] - u[l])
            total = (total + term).cancel()
        results.append(zero_check(f"second gamma identity i={i + 1}", total.cancel()))
    return results
