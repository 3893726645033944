"""Generating functions G(t), A(t) and Z_1(t) of a parameter system."""

from __future__ import annotations

from cyclotomic_bmw.ground_ring import GroundParams
from cyclotomic_bmw.ratfunc import RatFunc, cancelled_sum
from cyclotomic_bmw.series import SeriesExpansion, expand_series


def G_of_t(p: GroundParams) -> RatFunc:
    """G(t) = prod_l (t - u_l) / (t u_l - 1)."""
    t = p.t
    G = p.constant(1)
    for u_l in p.u:
        G = G * (t - u_l) / (t * u_l - 1)
    return G


def G_series(p: GroundParams, order: int) -> SeriesExpansion:
    """Expansion of G(t) at t = 0; entry a is mu_a."""
    return expand_series(G_of_t(p), "t", "zero", order)


def mu(p: GroundParams, a: int) -> RatFunc:
    """The coefficient mu_a of t^a in G(t); zero for negative a."""
    if a < 0:
        return p.constant(0)
    return G_series(p, a + 1)[a]


def A_of_t(p: GroundParams) -> RatFunc:
    """A(t) = rho^-1 p/(q - q^-1) + t/(t^2 - 1) for odd r, - t^2/(t^2 - 1) for even r."""
    t = p.t
    base = p.rho.inverse() * p.p / p.q_diff
    if p.r % 2:
        return base + t / (t * t - 1)
    return base - t * t / (t * t - 1)


def Z1_closed_form(p: GroundParams) -> RatFunc:
    """1/(rho (q^-1 - q)) + t^2/(t^2 - 1) + A(t) G(t^-1)."""
    t = p.t
    return (
        (p.rho * (p.q.inverse() - p.q)).inverse()
        + t * t / (t * t - 1)
        + A_of_t(p) * G_of_t(p).invert_var("t")
    )


def Z1_from_gammas(p: GroundParams) -> RatFunc:
    """sum_j gamma_j t/(t - u_j), the generating function of sum_j gamma_j u_j^a."""
    t = p.t
    return cancelled_sum(
        (g * t / (t - u_j) for g, u_j in zip(p.gammas.gamma, p.u)), p.constant(0)
    )


def Z1_series(p: GroundParams, order: int) -> SeriesExpansion:
    """Expansion of Z_1(t) at t = infinity, assembled from its three summands.

    Each summand is expanded on its own so that no common denominator of the
    whole expression is ever formed.
    """
    t = p.t
    constant = (p.rho * (p.q.inverse() - p.q)).inverse()
    head = expand_series(t * t / (t * t - 1), "t", "infinity", order)
    A = expand_series(A_of_t(p), "t", "infinity", order)
    G_inv = expand_series(G_of_t(p).invert_var("t"), "t", "infinity", order)
    series = head + A * G_inv
    coeffs = (series.coeffs[0] + constant,) + series.coeffs[1:]
    return SeriesExpansion("t", "infinity", tuple(c.cancel() for c in coeffs))


def delta_from_mu(p: GroundParams, a: int) -> RatFunc:
    """delta_a from the coefficients mu of G(t).

    For odd r:
        -[a = 0] rho^-1/(q - q^-1) + [a even] + mu_a rho^-1 p/(q - q^-1)
        + mu_{a-1} + mu_{a-3} + ...
    For even r the tail is - mu_a - mu_{a-2} - mu_{a-4} - ...
    """
    mus = G_series(p, a + 1).coeffs
    rho_inv = p.rho.inverse()
    value = mus[a] * rho_inv * p.p / p.q_diff
    if a == 0:
        value = value - rho_inv / p.q_diff
    if a % 2 == 0:
        value = value + 1
    if p.r % 2:
        tail = range(a - 1, -1, -2)
        for k in tail:
            value = value + mus[k]
    else:
        for k in range(a, -1, -2):
            value = value - mus[k]
    return value.cancel()
