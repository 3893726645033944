from collections import Counter
from fractions import Fraction

import pytest

from cyclotomic_bmw.zr_brauer import (
    DiagramElement,
    InvalidMatching,
    ParameterMismatch,
    SizeMismatch,
    ZrBrauerDiagram,
    canonicalize,
    closure_loops,
    compose,
    compose_loops,
    conditional_expectation,
    diagram_count_formula,
    diagram_trace,
    e_diagram,
    enumerate_diagrams,
    flip,
    gram_determinant,
    gram_matrix,
    identity_diagram,
    include,
    include_element,
    loop_index,
    markov_trace,
    numeric_thetas,
    parse_endpoint,
    symbolic_thetas,
    vertical_diagram,
)

THETAS = symbolic_thetas(3)
th0, th1 = THETAS


def capcup(label_cap: int = 0, label_cup: int = 0, r: int = 3) -> ZrBrauerDiagram:
    return canonicalize(2, r, [(0, 1, label_cap), (2, 3, label_cup)])


def test_endpoints():
    assert parse_endpoint("t1", 2) == 0
    assert parse_endpoint("b2", 2) == 3
    with pytest.raises(InvalidMatching):
        parse_endpoint("b3", 2)


@pytest.mark.parametrize("r, expected", [(3, [0, 1, 1]), (4, [0, 1, 2, 1])])
def test_loop_index(r, expected):
    assert [loop_index(k, r) for k in range(r)] == expected
    assert loop_index(-1, r) == 1


def test_canonical_orientation():
    d = canonicalize(1, 3, [(1, 0, 1)])
    assert d.strands == ((0, 1, 2),)
    assert canonicalize(1, 3, [(0, 1, 5)]) == canonicalize(1, 3, [(0, 1, 2)])


@pytest.mark.parametrize(
    "strands",
    [
        [(0, 1, 0), (1, 2, 0)],
        [(0, 0, 0), (1, 2, 0)],
        [(0, 1, 0)],
        [(0, 1, 0), (2, 4, 0)],
    ],
)
def test_invalid_matchings(strands):
    with pytest.raises(InvalidMatching):
        canonicalize(2, 3, strands)


def test_json():
    data = {
        "n": 2,
        "r": 3,
        "strands": [
            {"ends": ["b2", "t1"], "label": 1},
            {"ends": ["t2", "b1"], "label": 0},
        ],
    }
    d = ZrBrauerDiagram.from_json(data)
    assert d.strands == ((0, 3, 2), (1, 2, 0))
    assert ZrBrauerDiagram.from_json(d.to_json()) == d
    assert str(d) == "t1-b2[2] t2-b1[0]"


def test_counts():
    assert len(enumerate_diagrams(2, 2)) == diagram_count_formula(2, 2) == 12
    assert len(enumerate_diagrams(3, 1)) == diagram_count_formula(3, 1) == 15
    assert len(set(enumerate_diagrams(2, 3))) == 27
    assert enumerate_diagrams(0, 2) == [ZrBrauerDiagram(0, 2, ())]


def test_labelled_loop():
    a = capcup(label_cap=1)
    counts, c = compose_loops(a, a)
    assert counts == Counter({1: 1})
    assert c == a
    assert compose(a, a, THETAS) == (th1, a)
    assert compose(capcup(), capcup(), THETAS)[0] == th0


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose_loops(identity_diagram(2, 3), identity_diagram(3, 3))
    with pytest.raises(SizeMismatch):
        compose_loops(identity_diagram(2, 3), identity_diagram(2, 2))


def test_vertical_diagrams_multiply_like_a_wreath_product():
    s = vertical_diagram([1, 0], [1, 0], 3)
    t = vertical_diagram([1, 0], [0, 2], 3)
    scalar, c = compose(s, t, THETAS)
    assert scalar == 1
    assert c.strands[0][1] == 2 and c.strands[1][1] == 3
    assert compose(s, identity_diagram(2, 3), THETAS) == (1, s)
    with pytest.raises(InvalidMatching):
        vertical_diagram([0, 0], [0, 0], 3)


def test_e_diagram():
    assert e_diagram(3, 2, 3).strands == ((0, 3, 0), (1, 2, 0), (4, 5, 0))
    with pytest.raises(InvalidMatching):
        e_diagram(2, 2, 3)


def test_trace():
    assert diagram_trace(identity_diagram(2, 3), THETAS) == 1
    assert diagram_trace(e_diagram(2, 1, 3), THETAS) == 1 / th0
    assert diagram_trace(vertical_diagram([0], [1], 3), THETAS) == th1 / th0


def test_closure():
    counts, c = closure_loops(e_diagram(2, 1, 3))
    assert not counts
    assert c == identity_diagram(1, 3)
    counts, c = closure_loops(identity_diagram(2, 3))
    assert counts == Counter({0: 1})
    with pytest.raises(SizeMismatch):
        closure_loops(identity_diagram(0, 3))


def test_include_and_flip():
    assert include(identity_diagram(1, 3)) == identity_diagram(2, 3)
    assert include(e_diagram(2, 1, 3)) == e_diagram(3, 1, 3)
    assert flip(e_diagram(3, 1, 3)) == e_diagram(3, 1, 3)
    for d in enumerate_diagrams(2, 3):
        assert flip(flip(d)) == d


def test_element_arithmetic():
    E = DiagramElement.from_diagram(e_diagram(3, 1, 3), THETAS)
    F = DiagramElement.from_diagram(e_diagram(3, 2, 3), THETAS)
    one = DiagramElement.from_diagram(identity_diagram(3, 3), THETAS)
    assert E * E == E * th0
    assert E * F * E == E
    assert one * F == F
    assert (E + F - E) == F
    assert (E - E).is_zero()
    assert (2 * E).terms[e_diagram(3, 1, 3)] == 2


def test_elements_of_different_algebras():
    x = DiagramElement.from_diagram(identity_diagram(2, 3), THETAS)
    y = DiagramElement.from_diagram(identity_diagram(2, 3), numeric_thetas(3, [2, 1]))
    assert x != y
    with pytest.raises(ParameterMismatch):
        x + y


def test_conditional_expectation():
    E = DiagramElement.from_diagram(e_diagram(2, 1, 3), THETAS)
    one = DiagramElement.from_diagram(identity_diagram(1, 3), THETAS)
    assert conditional_expectation(E) == one * (1 / th0)
    assert conditional_expectation(include_element(one)) == one
    zero = DiagramElement.zero(2, 3, THETAS)
    assert conditional_expectation(zero).n == 1
    assert include_element(zero).n == 3


def test_markov_trace():
    x = DiagramElement.from_diagram(e_diagram(2, 1, 3), THETAS)
    y = DiagramElement.from_diagram(vertical_diagram([1, 0], [1, 2], 3), THETAS)
    assert markov_trace(x * y) == markov_trace(y * x)
    assert markov_trace(x + y) == markov_trace(x) + markov_trace(y)


def test_numeric_thetas():
    assert numeric_thetas(4, [1, 2, Fraction(1, 2)])[2] == Fraction(1, 2)
    with pytest.raises(ParameterMismatch):
        numeric_thetas(4, [1, 2])
    with pytest.raises(ParameterMismatch):
        numeric_thetas(2, [0, 1])


def test_gram():
    rows = gram_matrix(1, 2, [Fraction(2), Fraction(1)])
    assert rows == [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]
    assert gram_determinant(rows) == Fraction(3, 4)
    assert gram_determinant(gram_matrix(1, 2, [1, 1])) == 0
    assert gram_determinant([]) == 1


def test_gram_threads():
    thetas = [Fraction(3), Fraction(1, 2)]
    assert gram_matrix(2, 2, thetas, threads=1) == gram_matrix(2, 2, thetas, threads=3)
    assert gram_determinant(gram_matrix(2, 2, thetas)) != 0


@pytest.mark.slow
@pytest.mark.parametrize("n, r", [(2, 2), (2, 3), (3, 2)])
def test_gram_is_nondegenerate_at_generic_thetas(n, r):
    thetas = [Fraction(7, 3), Fraction(-5, 2), Fraction(11, 4)][: r // 2 + 1]
    rows = gram_matrix(n, r, thetas, threads=2)
    assert len(rows) == diagram_count_formula(n, r)
    assert gram_determinant(rows) != 0
