"""The r-dimensional module of the two-strand algebra.

On the basis e_1..e_r the generators act by

    Y e_j = u_j e_j
    E e_j = gamma_j (e_1 + ... + e_r)
    G e_j = (q^-1 - q) sum_i (gamma_j - [i = j]) / (1 - u_i u_j) e_i
"""

from __future__ import annotations

import logging
from typing import NamedTuple

from cyclotomic_bmw.datatypes import RelationResult, zero_check
from cyclotomic_bmw.ground_ring import DegenerateParameters, GroundParams
from cyclotomic_bmw.matrices import MatrixRF
from cyclotomic_bmw.ratfunc import RatFunc

logger = logging.getLogger(__name__)


class W2Rep(NamedTuple):
    Y: MatrixRF
    E: MatrixRF
    G: MatrixRF


def build_w2_rep(p: GroundParams) -> W2Rep:
    """Matrices of Y, E and G.

    Raises:
        DegenerateParameters: the u_j are not u-admissible or q^2 = 1.
    """
    gamma, u = p.gammas.gamma, p.u
    q_factor = p.q.inverse() - p.q
    Y = MatrixRF.diag(u)
    E = MatrixRF.from_function(p.r, lambda i, j: gamma[j])
    G = MatrixRF.from_function(
        p.r,
        lambda i, j: (
            q_factor * (gamma[j] - (1 if i == j else 0)) / (1 - u[i] * u[j])
        ).cancel(),
    )
    return W2Rep(Y=Y, E=E, G=G)


def y_power(p: GroundParams, a: int) -> MatrixRF:
    """Y^a, directly as diag(u_j^a) for every integer a."""
    return MatrixRF.diag([u_j**a for u_j in p.u])


def _nonzero_check(name: str, value: RatFunc | MatrixRF, problem: str) -> RelationResult:
    if value.is_zero():
        return RelationResult(name=name, passed=False, residual=problem)
    return RelationResult(name=name, passed=True)


def vandermonde_determinant(p: GroundParams) -> RatFunc:
    """Determinant of the vectors m, Ym, ..., Y^(r-1) m with m = e_1 + ... + e_r."""
    return MatrixRF.from_function(p.r, lambda i, k: p.u[i] ** k).det()


def verify_w2_relations(
    rep: W2Rep, p: GroundParams, window: int = 5
) -> list[RelationResult]:
    """Evaluate every defining relation of the two-strand algebra on rep.

    Args:
        rep: matrices from build_w2_rep.
        p: the parameter system they were built from.
        window: E Y^a E = delta_a E is checked for -window <= a <= window.

    Returns:
        One RelationResult per relation; a failing relation reports the first
        nonzero entry of its residual matrix.
    """
    Y, E, G = rep
    r = p.r
    identity = MatrixRF.identity(p.ring, r)
    q_factor = p.q.inverse() - p.q
    YGY = Y @ G @ Y
    results = []

    cyclotomic = identity
    for u_j in p.u:
        cyclotomic = cyclotomic @ (Y - identity * u_j)
    results.append(zero_check("cyclotomic relation", cyclotomic))
    results.append(zero_check("E^2 = delta_0 E", E @ E - E * p.delta(0)))
    for a in range(-window, window + 1):
        results.append(
            zero_check(
                f"E Y^a E = delta_a E a={a}", E @ y_power(p, a) @ E - E * p.delta(a)
            )
        )
    results.append(
        zero_check("YGY = G + (q^-1 - q)(1 - E)", YGY - G - (identity - E) * q_factor)
    )
    rho_inv = p.rho.inverse()
    results.append(zero_check("GE = rho^-1 E", G @ E - E * rho_inv))
    results.append(zero_check("EG = rho^-1 E", E @ G - E * rho_inv))
    results.append(zero_check("EYGY = rho E", E @ YGY - E * p.rho))
    results.append(zero_check("YGYE = rho E", YGY @ E - E * p.rho))
    results.append(zero_check("G YGY = 1", G @ YGY - identity))
    results.append(zero_check("YGY G = 1", YGY @ G - identity))
    results.append(
        zero_check("skein relation", G - G.inverse() - (identity - E) * p.q_diff)
    )
    results.append(zero_check("mixed braid relation", G @ Y @ G @ Y - Y @ G @ Y @ G))
    results.append(
        _nonzero_check(
            "vandermonde independence",
            vandermonde_determinant(p),
            "m, Ym, ... are dependent",
        )
    )
    results.append(_nonzero_check("E nonzero", E, "E = 0"))
    logger.debug(
        "W2 relations for r=%d: %d of %d hold",
        r,
        sum(result.passed for result in results),
        len(results),
    )
    return results


def spectral_idempotents(Y: MatrixRF, p: GroundParams) -> list[MatrixRF]:
    """P_j = prod_{l != j} (Y - u_l) / (u_j - u_l).

    Raises:
        DegenerateParameters: two of the u_j coincide.
    """
    u = p.u
    identity = MatrixRF.identity(p.ring, p.r)
    idempotents = []
    for j in range(p.r):
        P = identity
        for l in range(p.r):
            if l == j:
                continue
            if u[j] == u[l]:
                raise DegenerateParameters(f"u{j + 1} = u{l + 1}")
            P = (P @ (Y - identity * u[l])) * (u[j] - u[l]).inverse()
        idempotents.append(P)
    return idempotents


def check_spectral_idempotents(rep: W2Rep, p: GroundParams) -> list[RelationResult]:
    Y, E, _ = rep
    P = spectral_idempotents(Y, p)
    identity = MatrixRF.identity(p.ring, p.r)
    results = []
    total = MatrixRF.zeros(p.ring, p.r)
    for j, P_j in enumerate(P):
        label = j + 1
        total = total + P_j
        results.append(zero_check(f"P_{label}^2 = P_{label}", P_j @ P_j - P_j))
        results.append(
            zero_check(f"Y P_{label} = u_{label} P_{label}", Y @ P_j - P_j * p.u[j])
        )
        results.append(
            zero_check(
                f"E P_{label} E = gamma_{label} E",
                E @ P_j @ E - E * p.gammas.gamma[j],
            )
        )
        for i in range(p.r):
            if i != j:
                results.append(zero_check(f"P_{i + 1} P_{label} = 0", P[i] @ P_j))
    results.append(zero_check("sum of P_j = 1", total - identity))
    return results


def delta_negative_consistency(
    p: GroundParams, a_max: int, rep: W2Rep | None = None
) -> list[RelationResult]:
    """E Y^-a E = delta_-a E for 0 <= a <= a_max, delta_-a from its recursion."""
    if rep is None:
        rep = build_w2_rep(p)
    E = rep.E
    return [
        zero_check(
            f"E Y^-a E = delta_-a E a={a}",
            E @ y_power(p, -a) @ E - E * p.delta(-a),
        )
        for a in range(a_max + 1)
    ]
