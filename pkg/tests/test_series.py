import pytest

from cyclotomic_bmw.laurent import LaurentRing
from cyclotomic_bmw.ratfunc import RatFunc
from cyclotomic_bmw.series import NotExpandable, expand_series

R = LaurentRing(("u", "t"))
u = RatFunc.gen(R, "u")
t = RatFunc.gen(R, "t")


def test_geometric_series_at_infinity():
    # t / (t - u) = sum u^a t^-a
    series = expand_series(t / (t - u), "t", "infinity", 5)
    assert series.order == 5
    for a in range(5):
        assert series[a] == u**a


def test_geometric_series_at_zero():
    # 1 / (1 - u t) = sum u^a t^a
    series = expand_series(1 / (1 - u * t), "t", "zero", 4)
    for a in range(4):
        assert series[a] == u**a


def test_polar_part():
    with pytest.raises(NotExpandable):
        expand_series(t**2 / (t - u), "t", "infinity", 3)
    with pytest.raises(NotExpandable):
        expand_series(1 / t, "t", "zero", 3)


def test_product_and_resum():
    f = expand_series(t / (t - u), "t", "infinity", 4)
    g = expand_series(t / (t + u), "t", "infinity", 4)
    h = f * g
    # t^2 / (t^2 - u^2) = 1 + u^2 t^-2 + ...
    expected = [1, 0, u**2, 0]
    for a in range(4):
        assert h[a] == expected[a]
    assert (f + g)[1] == 0
    assert h.resum() == 1 + u**2 / t**2


def test_incompatible_series():
    f = expand_series(t / (t - u), "t", "infinity", 2)
    g = expand_series(1 / (1 - u * t), "t", "zero", 2)
    with pytest.raises(ValueError):
        f + g


def test_zero_function():
    series = expand_series(RatFunc(R.zero()), "t", "infinity", 3)
    assert all(c.is_zero() for c in series.coeffs)
