import pytest

from cyclotomic_bmw.generating_functions import Z1_closed_form
from cyclotomic_bmw.ground_ring import GroundParams, NonCanonicalRho
from cyclotomic_bmw.multipartitions import (
    Multipartition,
    Node,
    UpDownTableau,
    addable_nodes,
    enumerate_tableaux,
    gamma_level,
)
from cyclotomic_bmw.specialization import MODULUS, Specialization
from cyclotomic_bmw.trace_weights import (
    eigenvalue_sequence,
    markov_sum,
    qtilde,
    qtilde_along,
    qtilde_recursion_check,
    semisimple_sufficient,
    tableau_weight,
    telescoping_residual,
    weight_step,
    weight_table,
    weight_tables,
    ztilde,
)

ODD = GroundParams.specialized(1, 3, [2])
EVEN = GroundParams.specialized(2, 3, [2, 5])


@pytest.mark.parametrize("p, n", [(ODD, 3), (EVEN, 2), (GroundParams.specialized(3, 2, [3, 5, 7]), 2)])
def test_markov_sum(p, n):
    for k in range(n + 1):
        assert markov_sum(k, p) == 1


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2])
def test_markov_sum_symbolic(r):
    p = GroundParams.symbolic(r)
    for k, table in enumerate(weight_tables(3, p)):
        assert markov_sum(k, p, table) == 1


def test_one_strand_weights():
    table = weight_table(1, EVEN)
    for j, shape in enumerate([((1,), ()), ((), (1,))]):
        assert table[Multipartition(shape)] == EVEN.gammas.gamma[j] / EVEN.delta(0)
    assert weight_table(1, ODD).to_json() == {"[1]": "1"}


def test_weights_are_nonzero():
    for table in weight_tables(2, EVEN):
        assert all(not weight.is_zero() for weight in table.entries.values())


def test_weights_independent_of_tableau():
    table = weight_table(3, ODD)
    for tableau in enumerate_tableaux(3, 1):
        assert tableau_weight(tableau, ODD) == table[tableau.shape]


def test_threads_do_not_change_weights():
    single = weight_table(2, EVEN, threads=1)
    several = weight_table(2, EVEN, threads=4)
    assert list(single.entries) == list(several.entries)
    for shape, weight in single.entries.items():
        assert several[shape] == weight


def test_telescoping():
    for table in weight_tables(2, EVEN):
        for shape, weight in table.entries.items():
            assert telescoping_residual(shape, weight, EVEN).is_zero()


def test_non_canonical_rho():
    p = EVEN.with_rho(EVEN.constant(7))
    with pytest.raises(NonCanonicalRho):
        weight_step(Multipartition.empty(2), Node(1, 1, 1), p.constant(1), p)


@pytest.mark.parametrize("r", [1, 2])
def test_ztilde_of_empty_shape(r):
    p = GroundParams.symbolic(r)
    assert ztilde(Multipartition.empty(r), p) == Z1_closed_form(p)


def test_qtilde_recursion():
    p = GroundParams.symbolic(2)
    for shape in [Multipartition.empty(2), Multipartition(((1,), ())), Multipartition(((2,), (1,)))]:
        for node in addable_nodes(shape):
            assert qtilde_recursion_check(shape, node, p).is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2])
def test_qtilde_recursion_up_to_size_three(r):
    p = GroundParams.symbolic(r)
    shapes = set(gamma_level(2, r)) | set(gamma_level(3, r))
    assert len(shapes) == {1: 7, 2: 18}[r]
    for shape in shapes:
        for node in addable_nodes(shape):
            assert qtilde_recursion_check(shape, node, p).is_zero(), (shape, node)


def test_qtilde_along_tableaux():
    for tableau in enumerate_tableaux(3, 2):
        assert qtilde_along(tableau, EVEN) == qtilde(tableau.shape, EVEN).value


def test_eigenvalue_sequence():
    tableau = UpDownTableau.from_json([[[]], [[1]], [[2]], [[1]]])
    assert eigenvalue_sequence(tableau, ODD) == [2, 18, ODD.constant(18) ** -1]


def test_semisimple():
    ok, violations = semisimple_sufficient(Specialization({"q": 5, "u1": 2, "u2": 3}), 4)
    assert ok
    assert violations == []


def test_not_semisimple():
    ok, violations = semisimple_sufficient(Specialization({"q": 2, "u1": 8, "u2": 3}), 4)
    assert not ok
    assert "u1 = +q^+3" in violations
    assert "u1*u1 = q^+6" in violations


def test_semisimple_violations():
    _, violations = semisimple_sufficient(
        Specialization({"q": 3, "u1": -3, "u2": -3}), 1
    )
    assert "u1 = u2" in violations
    assert "u1 = -q^+1" in violations
    assert "u1*u2 = q^+2" in violations


def test_semisimple_modular():
    spec = Specialization({"q": 2, "u1": 8}, modulus=MODULUS)
    ok, violations = semisimple_sufficient(spec, 2)
    assert not ok
    assert "u1 = +q^+3" in violations
