import pytest

from cyclotomic_bmw.generating_functions import (
    G_of_t,
    G_series,
    Z1_closed_form,
    Z1_from_gammas,
    Z1_series,
    delta_from_mu,
    mu,
)
from cyclotomic_bmw.ground_ring import GroundParams


@pytest.mark.parametrize("r", [1, 2, 3])
def test_Z1_closed_form(r):
    p = GroundParams.symbolic(r)
    assert Z1_closed_form(p) == Z1_from_gammas(p)


@pytest.mark.parametrize("r", [1, 2])
def test_Z1_series_gives_deltas(r):
    p = GroundParams.symbolic(r)
    series = Z1_series(p, 4)
    for a in range(4):
        assert series[a] == p.delta(a)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_delta_from_mu(r):
    p = GroundParams.specialized(r, 3, [2, 5, 7][:r])
    for a in range(4):
        assert delta_from_mu(p, a) == p.delta(a)


def test_mu():
    p = GroundParams.specialized(1, 3, [2])
    # G(t) = (t - 2)/(2t - 1) = 2 + 3t + 6t^2 + ...
    assert mu(p, 0) == 2
    assert mu(p, 1) == 3
    assert mu(p, 2) == 6
    assert mu(p, -1) == 0
    assert G_series(p, 3).resum() == 2 + 3 * p.t + 6 * p.t**2


def test_G_is_inverted_by_substitution():
    p = GroundParams.symbolic(2)
    assert G_of_t(p) * G_of_t(p).invert_var("t") == 1
