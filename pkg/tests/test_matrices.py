import pytest

from cyclotomic_bmw.laurent import LaurentRing
from cyclotomic_bmw.matrices import MatrixRF, SingularMatrix
from cyclotomic_bmw.ratfunc import RatFunc

R = LaurentRing(("q",))
q = RatFunc.gen(R, "q")
one = RatFunc(R.one())
zero = RatFunc(R.zero())


def test_square():
    with pytest.raises(ValueError):
        MatrixRF(((one, zero),))


def test_products_and_inverse():
    m = MatrixRF(((q, one), (one, zero)))
    assert m @ m.inverse() == MatrixRF.identity(R, 2)
    assert m**-1 @ m**2 == m
    assert m.det() == -1


def test_diag_det():
    m = MatrixRF.diag([q, q + 1, 2 * one])
    assert m.det() == 2 * q * (q + 1)


def test_singular():
    m = MatrixRF(((q, q), (one, one)))
    assert m.det().is_zero()
    with pytest.raises(SingularMatrix):
        m.inverse()


def test_first_nonzero():
    m = MatrixRF(((zero, zero), (zero, q)))
    assert m.first_nonzero() == (1, 1, q)
    assert MatrixRF.zeros(R, 2).first_nonzero() is None
    assert (m - m).is_zero()
