"""Markov trace weights of path idempotents and the generating function Q~.

The weight w_n(shape) is the trace of a minimal idempotent indexed by an
up-down tableau of length n. It is computed by a recursion along the
tableau: each step multiplies by a factor that depends only on the previous
shape, the node changed and the parameters.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from cyclotomic_bmw.generating_functions import A_of_t, G_of_t
from cyclotomic_bmw.ground_ring import GroundParams, NonCanonicalRho
from cyclotomic_bmw.multipartitions import (
    BranchingGraph,
    Multipartition,
    Node,
    UpDownTableau,
    add_node,
    addable_nodes,
    b_value,
    build_branching_graph,
    content,
    removable_nodes,
    tableau_counts,
)
from cyclotomic_bmw.ratfunc import RatFunc, cancelled_sum
from cyclotomic_bmw.specialization import Specialization

logger = logging.getLogger(__name__)


class ShapeInconsistency(ArithmeticError):
    pass


@dataclass(frozen=True)
class QtildeFunc:
    shape: Multipartition
    value: RatFunc


def _incident_nodes(shape: Multipartition) -> list[Node]:
    return addable_nodes(shape) + removable_nodes(shape)


def qtilde(shape: Multipartition, p: GroundParams) -> QtildeFunc:
    """p A(t) prod_alpha (t - b_alpha^-1)/(t - b_alpha) over incident nodes."""
    t = p.t
    value = p.p * A_of_t(p)
    for node in _incident_nodes(shape):
        b = b_value(node, shape, p)
        value = value * (t - b.inverse()) / (t - b)
    return QtildeFunc(shape=shape, value=value.cancel())


def ztilde(shape: Multipartition, p: GroundParams) -> RatFunc:
    t = p.t
    offset = (p.rho * (p.q.inverse() - p.q)).inverse() + t * t / (t * t - 1)
    return (qtilde(shape, p).value + offset).cancel()


def node_ratio(node: Node, p: GroundParams) -> RatFunc:
    """Factor by which Q~ changes when `node` is added."""
    t, q = p.t, p.q
    c = content(node, p)
    c_inv = c.inverse()
    q2 = q * q
    return (
        (t - c) ** 2
        * (t - c_inv / q2)
        * (t - q2 * c_inv)
        / ((t - c_inv) ** 2 * (t - c / q2) * (t - q2 * c))
    )


def qtilde_recursion_check(mu: Multipartition, node: Node, p: GroundParams) -> RatFunc:
    """Q~(t, mu + node) - Q~(t, mu) * node_ratio(node); zero when the recursion holds.

    Raises:
        NodeNotIncident: node is not addable to mu.
    """
    lam = add_node(mu, node)
    residual = qtilde(lam, p).value - qtilde(mu, p).value * node_ratio(node, p)
    return residual.cancel()


def qtilde_along(tableau: UpDownTableau, p: GroundParams) -> RatFunc:
    """Q~ of the final shape, built from Q_1(t) = A(t) G(t^-1) one node at a time."""
    value = A_of_t(p) * G_of_t(p).invert_var("t")
    for node, added in tableau.steps():
        ratio = node_ratio(node, p)
        value = (value * ratio if added else value / ratio).cancel()
    return value


def weight_step(
    mu: Multipartition, node: Node, w_prev: RatFunc, p: GroundParams
) -> RatFunc:
    """Weight of a tableau extending one with final shape mu and weight w_prev.

    With b = b(node, mu) and p the product of the u_j the factor is
    delta_0^-1 p b^-1 B(b) prod_{alpha != node} (b - b_alpha^-1)/(b - b_alpha),
    where B(b) = (b - b^-1)/(q - q^-1) + 1 for odd r and
    (q^-1 b - q b^-1)/(q - q^-1) for even r.

    Raises:
        NonCanonicalRho: rho is not the canonical choice.
        NodeNotIncident: node is neither addable to nor removable from mu.
    """
    if not p.is_canonical:
        raise NonCanonicalRho("Trace weights need the canonical rho.")
    b = b_value(node, mu, p)
    b_inv = b.inverse()
    q = p.q
    if p.r % 2:
        bracket = (b - b_inv) / p.q_diff + 1
    else:
        bracket = (q.inverse() * b - q * b_inv) / p.q_diff
    factor = p.delta(0).inverse() * p.p * b_inv * bracket
    for other in _incident_nodes(mu):
        if other == node:
            continue
        b_other = b_value(other, mu, p)
        factor = factor * (b - b_other.inverse()) / (b - b_other)
    return (factor * w_prev).cancel()


def tableau_weight(tableau: UpDownTableau, p: GroundParams) -> RatFunc:
    weight = p.constant(1)
    for shape, (node, _) in zip(tableau.shapes, tableau.steps()):
        weight = weight_step(shape, node, weight, p)
    return weight


def eigenvalue_sequence(tableau: UpDownTableau, p: GroundParams) -> list[RatFunc]:
    """b(k, T) for k = 1..n, the eigenvalues of y_1..y_n on the path idempotent."""
    return [
        b_value(node, shape, p)
        for shape, (node, _) in zip(tableau.shapes, tableau.steps())
    ]


@dataclass
class WeightTable:
    n: int
    entries: dict[Multipartition, RatFunc] = field(default_factory=dict)

    def __getitem__(self, shape: Multipartition) -> RatFunc:
        return self.entries[shape]

    def to_json(self) -> dict[str, str]:
        return {shape.label(): str(weight) for shape, weight in self.entries.items()}


def _level_weights(
    previous: WeightTable, graph: BranchingGraph, p: GroundParams, threads: int
) -> WeightTable:
    k = previous.n + 1

    def weight_of(lam: Multipartition) -> RatFunc:
        candidates = []
        for mu in graph.parents(k, lam):
            (node,) = mu.cells() ^ lam.cells()
            candidates.append(weight_step(mu, node, previous[mu], p))
        first = candidates[0]
        for other in candidates[1:]:
            if other != first:
                raise ShapeInconsistency(
                    f"Tableaux of shape {lam} and length {k} have "
                    f"different weights: {first} and {other}."
                )
        return first

    shapes = list(graph.levels[k])
    with ThreadPoolExecutor(max_workers=threads) as executor:
        weights = list(executor.map(weight_of, shapes))
    return WeightTable(n=k, entries=dict(zip(shapes, weights)))


def weight_tables(n: int, p: GroundParams, threads: int = 1) -> list[WeightTable]:
    """Weight tables of levels 0..n.

    Level k + 1 is computed from level k: every edge into a shape yields a
    candidate weight, one for each way the tableaux of that shape can end, and
    all candidates must agree.

    Raises:
        ShapeInconsistency: two tableaux of the same length and shape get
            different weights.
    """
    graph = build_branching_graph(n, p.r)
    tables = [WeightTable(n=0, entries={graph.levels[0][0]: p.constant(1)})]
    for k in range(1, n + 1):
        tables.append(_level_weights(tables[-1], graph, p, threads))
        logger.debug("Weights of level %d: %d shapes", k, len(graph.levels[k]))
    return tables


def weight_table(n: int, p: GroundParams, threads: int = 1) -> WeightTable:
    return weight_tables(n, p, threads)[-1]


def telescoping_residual(mu: Multipartition, w: RatFunc, p: GroundParams) -> RatFunc:
    """sum over incident nodes of weight_step(mu, node, w) minus w."""
    return cancelled_sum(
        (weight_step(mu, node, w, p) for node in _incident_nodes(mu)), -w
    )


def markov_sum(n: int, p: GroundParams, table: WeightTable | None = None) -> RatFunc:
    """sum over Gamma_n of |T(n, shape)| w_n(shape); equals 1."""
    if table is None:
        table = weight_table(n, p)
    return cancelled_sum(
        (count * table[shape] for shape, count in tableau_counts(n, p.r).items()),
        p.constant(0),
    )


def _format_power(e: int) -> str:
    return f"q^{e:+d}"


def semisimple_sufficient(spec: Specialization, n: int) -> tuple[bool, list[str]]:
    """Check a sufficient condition for semisimplicity of the algebras up to n.

    Every u_j must avoid +-q^e for odd |e| <= 2n + 1, the ratios u_j/u_j'
    (j != j') and the products u_j u_j' must avoid q^(2k) for |k| <= n, and
    the u_j must be distinct.

    Returns:
        A flag and the list of violated conditions, e.g. "u1 = +q^+3".
    """
    names = sorted(
        (name for name in spec.assignment if name.startswith("u")),
        key=lambda name: int(name[1:]),
    )
    u = [spec[name] for name in names]
    violations = []
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] == u[j]:
                violations.append(f"{names[i]} = {names[j]}")

    for name, u_j in zip(names, u):
        for e in range(-(2 * n + 1), 2 * n + 2, 2):
            power = spec.power("q", e)
            if u_j == power:
                violations.append(f"{name} = +{_format_power(e)}")
            elif u_j == spec.reduce(-power):
                violations.append(f"{name} = -{_format_power(e)}")

    for k in range(-n, n + 1):
        power = spec.power("q", 2 * k)
        for i in range(len(u)):
            for j in range(len(u)):
                if i != j and k and spec.reduce(u[i] - power * u[j]) == 0:
                    violations.append(f"{names[i]}/{names[j]} = {_format_power(2 * k)}")
                if i <= j and spec.reduce(u[i] * u[j] - power) == 0:
                    violations.append(f"{names[i]}*{names[j]} = {_format_power(2 * k)}")
    return not violations, violations
