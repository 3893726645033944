from fractions import Fraction

import numpy as np
import pytest

from cyclotomic_bmw.datatypes import RelationResult
from cyclotomic_bmw.ground_ring import GroundParams
from cyclotomic_bmw.verification import (
    SECTIONS,
    SampleCounts,
    _sampled,
    brauer_checks,
    degenerate_point,
    generic_point,
    ground_ring_checks,
    multipartition_checks,
    random_diagram,
    random_parameters,
    random_rational,
    randomized,
    semisimplicity_checks,
    trace_form_checks,
    trace_weight_checks,
    trial_generators,
    verify_all,
    w2_checks,
)
from cyclotomic_bmw.zr_brauer import numeric_thetas


def failures(results):
    return [(result.name, result.residual) for result in results if not result.passed]


def test_trial_generators_are_reproducible():
    first = [random_rational(rng) for rng in trial_generators(42, 3)]
    second = [random_rational(rng) for rng in trial_generators(42, 3)]
    assert first == second
    assert len(set(first)) == 3


def test_random_rational_bounds():
    rng = trial_generators(1, 1)[0]
    for _ in range(100):
        x = random_rational(rng, bound=5)
        assert x != 0
        assert abs(x.numerator) <= 5 and x.denominator <= 5


def test_degenerate_points():
    assert degenerate_point(Fraction(1), [Fraction(2)])
    assert degenerate_point(Fraction(2), [Fraction(3), Fraction(3)])
    assert degenerate_point(Fraction(2), [Fraction(3), Fraction(1, 3)])
    assert degenerate_point(Fraction(2), [Fraction(-1, 2)])
    assert not degenerate_point(Fraction(2), [Fraction(3), Fraction(5)])


def test_random_parameters():
    p = random_parameters(trial_generators(7, 1)[0], 2)
    assert p.mode == "specialized"
    assert not p.delta(0).is_zero()


def test_randomized_tags_trials():
    results = randomized(lambda p: w2_checks(p, 1), 2, trials=2, seed=3, threads=2)
    assert {result.trial for result in results} == {0, 1}
    assert failures(results) == []


def test_randomized_is_independent_of_threads():
    single = randomized(lambda p: [*ground_ring_checks(p, 1)], 1, 3, 5, threads=1)
    several = randomized(lambda p: [*ground_ring_checks(p, 1)], 1, 3, 5, threads=3)
    assert [(r.name, r.trial) for r in single] == [(r.name, r.trial) for r in several]


def test_ground_ring_checks():
    assert failures(ground_ring_checks(GroundParams.symbolic(2), window=3)) == []


def test_multipartition_checks():
    results = multipartition_checks(3, 2)
    assert failures(results) == []
    assert results[0].name == "dimension identity n=0"


def test_trace_weight_checks():
    p = GroundParams.specialized(2, 3, [2, 5])
    assert failures(trace_weight_checks(p, 2)) == []


def test_brauer_checks_symbolic():
    rng = trial_generators(0, 1)[0]
    results = brauer_checks(3, 2, rng, SampleCounts(2, 2, 2))
    assert failures(results) == []
    names = [result.name for result in results]
    assert "E_1 E_2 E_1 = E_1" in names
    assert "markov property (2 samples)" in names


def test_brauer_checks_numeric():
    rng = trial_generators(0, 1)[0]
    thetas = numeric_thetas(3, [Fraction(5, 2), Fraction(-3)])
    assert failures(brauer_checks(2, 3, rng, SampleCounts(3, 3, 3), thetas=thetas)) == []


def test_random_diagram():
    rng = np.random.Generator(np.random.PCG64(11))
    d = random_diagram(3, 4, rng)
    assert d.n == 3 and d.r == 4
    assert sorted(e for a, b, _ in d.strands for e in (a, b)) == list(range(6))


def test_verify_all_symbolic():
    sections = verify_all(1, 2, mode="symbolic", window=2, samples=SampleCounts(5, 5, 5))
    assert tuple(sections) == SECTIONS
    for results in sections.values():
        assert failures(results) == []


def test_verify_all_randomized():
    sections = verify_all(
        2, 2, mode="randomized", trials=2, seed=9, window=2, samples=SampleCounts(4, 4, 4)
    )
    assert tuple(sections) == SECTIONS
    for name, results in sections.items():
        assert failures(results) == [], name
    assert {r.trial for r in sections["zr-brauer"]} == {0, 1}


def test_sample_counts_split_over_trials():
    assert SampleCounts().split(20) == SampleCounts(10, 25, 5)
    assert SampleCounts(3, 3, 3).split(2) == SampleCounts(2, 2, 2)


def test_verify_all_default_sample_counts():
    sections = verify_all(1, 1, window=1)
    names = [result.name for result in sections["zr-brauer"]]
    assert "associativity (200 samples)" in names
    assert "trace property (500 samples)" in names
    assert failures(sections["zr-brauer"]) == []


@pytest.mark.slow
def test_verify_all_two_labels_three_strands():
    sections = verify_all(2, 3, seed=42)
    assert tuple(sections) == SECTIONS
    for name, results in sections.items():
        assert failures(results) == [], name
    names = [result.name for result in sections["zr-brauer"]]
    assert "bimodule property (100 samples)" in names


def test_sampled_reports_first_failure():
    outcomes = iter(
        [RelationResult("", True), RelationResult("", False, residual="x")]
    )
    result = _sampled("associativity", 3, lambda: next(outcomes))
    assert result.name == "associativity (3 samples)"
    assert not result.passed
    assert result.residual == "sample 1: x"


def test_generic_point_avoids_degenerate_values():
    point = generic_point(3)
    assert [point[f"u{j}"] for j in (1, 2, 3)] == [3, 5, 7]
    assert point["q"] == 2


@pytest.mark.parametrize("r, n", [(1, 1), (1, 3), (2, 1), (3, 4), (2, 6)])
def test_semisimplicity_checks(r, n):
    results = semisimplicity_checks(n, r)
    assert failures(results) == []
    assert results[0].name == f"generic point n={n}"


def test_semisimplicity_planted_clauses():
    names = [result.name for result in semisimplicity_checks(2, 2)]
    assert names[1:] == [
        "detects odd power of q",
        "detects equal parameters",
        "detects ratio is a power of q^2",
        "detects product is a power of q^2",
    ]


@pytest.mark.parametrize("n, r", [(1, 1), (2, 2), (2, 3)])
def test_trace_form_checks(n, r):
    rng = trial_generators(5, 1)[0]
    results = trace_form_checks(n, r, rng)
    assert len(results) == n
    assert failures(results) == []
