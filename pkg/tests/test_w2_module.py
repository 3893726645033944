import pytest

from cyclotomic_bmw.ground_ring import DegenerateParameters, GroundParams
from cyclotomic_bmw.matrices import MatrixRF
from cyclotomic_bmw.verification import randomized, w2_checks
from cyclotomic_bmw.w2_module import (
    build_w2_rep,
    check_spectral_idempotents,
    delta_negative_consistency,
    spectral_idempotents,
    vandermonde_determinant,
    verify_w2_relations,
    y_power,
)


@pytest.mark.parametrize(
    "p",
    [
        GroundParams.symbolic(1),
        GroundParams.symbolic(2),
        GroundParams.specialized(3, 2, [3, 5, 7]),
    ],
)
def test_relations_hold(p):
    rep = build_w2_rep(p)
    results = verify_w2_relations(rep, p, window=3)
    results += check_spectral_idempotents(rep, p)
    results += delta_negative_consistency(p, 3, rep)
    failures = [result.name for result in results if not result.passed]
    assert failures == []


@pytest.mark.slow
def test_relations_hold_at_level_three():
    results = w2_checks(GroundParams.symbolic(3), 3)
    failures = [result.name for result in results if not result.passed]
    assert failures == []


@pytest.mark.slow
@pytest.mark.parametrize("r", [4, 5])
def test_relations_hold_at_random_points(r):
    results = randomized(lambda p: w2_checks(p, 3), r, trials=20, seed=42)
    assert len({result.trial for result in results}) == 20
    assert [(result.trial, result.name) for result in results if not result.passed] == []


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2])
def test_negative_powers_up_to_five(r):
    results = delta_negative_consistency(GroundParams.symbolic(r), 5)
    assert len(results) == 6
    assert all(result.passed for result in results)


def test_relation_names():
    p = GroundParams.specialized(2, 3, [2, 5])
    names = [result.name for result in verify_w2_relations(build_w2_rep(p), p, window=1)]
    assert names[:2] == ["cyclotomic relation", "E^2 = delta_0 E"]
    assert "E Y^a E = delta_a E a=-1" in names
    assert "skein relation" in names
    assert names[-1] == "E nonzero"


def test_wrong_rho_is_detected():
    p = GroundParams.specialized(2, 3, [2, 5])
    rep = build_w2_rep(p)
    other = p.with_rho(p.constant(7))
    failures = {r.name for r in verify_w2_relations(rep, other, window=0) if not r.passed}
    assert "GE = rho^-1 E" in failures


def test_y_power():
    p = GroundParams.specialized(2, 3, [2, 5])
    rep = build_w2_rep(p)
    assert y_power(p, 3) == rep.Y**3
    assert y_power(p, -2) == rep.Y**-2


def test_vandermonde():
    p = GroundParams.specialized(2, 3, [2, 5])
    assert vandermonde_determinant(p) == 3


def test_spectral_idempotents_need_distinct_u():
    p = GroundParams.specialized(2, 3, [2, 2])
    with pytest.raises(DegenerateParameters):
        spectral_idempotents(MatrixRF.diag(p.u), p)
    with pytest.raises(DegenerateParameters):
        build_w2_rep(p)
