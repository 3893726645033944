from fractions import Fraction

import pytest

from cyclotomic_bmw.generating_functions import delta_from_mu

from cyclotomic_bmw.ground_ring import (
    DegenerateParameters,
    GroundParams,
    IndexOutOfRange,
    canonical_rho,
    delta_closed_form,
    delta_forward_recursion,
    delta_negative,
    ground_relation_residual,
    signed_elementary,
    transformed_params,
)


@pytest.fixture(scope="module")
def generic2():
    return GroundParams.symbolic(2)


def test_signed_elementary(generic2):
    u1, u2 = generic2.u
    assert signed_elementary(generic2.u, 0) == u1 * u2
    assert signed_elementary(generic2.u, 1) == -(u1 + u2)
    assert signed_elementary(generic2.u, 2) == 1
    with pytest.raises(IndexOutOfRange):
        signed_elementary(generic2.u, 3)


def test_cyclotomic_polynomial_vanishes_at_roots(generic2):
    for u_i in generic2.u:
        total = generic2.constant(0)
        for j, a_j in enumerate(generic2.a):
            total = total + a_j * u_i**j
        assert total.is_zero()


def test_canonical_rho(generic2):
    u1, u2 = generic2.u
    assert canonical_rho(2, generic2.u, generic2.q) == u1 * u2 / generic2.q
    assert generic2.is_canonical
    p = GroundParams.symbolic(3)
    assert p.rho == p.p
    assert not generic2.with_rho(generic2.q).is_canonical


def test_one_strand_loop_value():
    p = GroundParams.symbolic(1)
    (u,) = p.u
    q = p.q
    assert p.delta(0) == 1 + (u.inverse() - u) / (q.inverse() - q)
    assert ground_relation_residual(p).is_zero()


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ground_relation(r):
    assert ground_relation_residual(GroundParams.symbolic(r)).is_zero()


@pytest.mark.parametrize("r", [1, 2, 3])
def test_forward_recursion_matches_closed_form(r):
    p = GroundParams.specialized(r, 5, [2, 3, 7][:r])
    for a in range(r, r + 3):
        assert delta_forward_recursion(p, a) == delta_closed_form(p, a)


@pytest.mark.parametrize("r", [1, 2])
def test_negative_deltas_match_closed_form(r):
    p = GroundParams.specialized(r, 3, [2, 5][:r])
    for j in range(1, 4):
        assert delta_negative(p, j) == delta_closed_form(p, -j)


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2, 3])
def test_delta_sequence_up_to_eight(r):
    p = GroundParams.symbolic(r)
    for a in range(9):
        closed = delta_closed_form(p, a)
        assert delta_from_mu(p, a) == closed
        if a >= r:
            assert delta_forward_recursion(p, a) == closed


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2])
def test_negative_deltas_up_to_five(r):
    p = GroundParams.symbolic(r)
    for j in range(1, 6):
        assert delta_negative(p, j) == delta_closed_form(p, -j)


def test_negative_index():
    with pytest.raises(IndexOutOfRange):
        delta_negative(GroundParams.symbolic(1), 0)


def test_delta_sources(generic2):
    assert generic2.delta_source(0) == "closed-form"
    assert generic2.delta_source(-1) == "negative-recursion"
    explicit = generic2.with_deltas([generic2.delta(0), generic2.delta(1)])
    assert explicit.delta_source(1) == "explicit"
    assert explicit.delta_source(3) == "recursion"
    assert explicit.delta(3) == generic2.delta(3)


def test_gammas_sum_to_delta0():
    p = GroundParams.specialized(3, Fraction(1, 2), [2, 3, -5])
    assert sum(p.gammas.gamma, p.constant(0)) == p.delta(0)
    assert p.gammas.simplified is not None


@pytest.mark.parametrize("u", [[2, 2], [2, Fraction(1, 2)], [3, 1]])
def test_degenerate_gammas(u):
    p = GroundParams.specialized(2, 5, u)
    with pytest.raises(DegenerateParameters):
        p.gammas


def test_invalid_parameters():
    with pytest.raises(DegenerateParameters):
        GroundParams.specialized(2, 5, [0, 3])
    with pytest.raises(ValueError):
        GroundParams.specialized(2, 5, [1, 2, 3])


@pytest.mark.parametrize("kind", ["invert-q", "negate"])
def test_transformations_keep_gammas(kind):
    p = GroundParams.specialized(2, 5, [2, 3])
    other = transformed_params(p, kind)
    assert other.gammas.gamma == p.gammas.gamma
    with pytest.raises(ValueError):
        transformed_params(p, "swap")
