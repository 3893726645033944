"""r-tuples of Young diagrams, their nodes and up-down tableaux.

Partitions are tuples of positive, weakly decreasing row lengths. Nodes are
triples (j, x, y): component j, row x and column y, all counted from 1.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from cyclotomic_bmw.ground_ring import GroundParams
from cyclotomic_bmw.ratfunc import RatFunc

logger = logging.getLogger(__name__)


class InvalidShape(ValueError):
    pass


class NodeNotIncident(ValueError):
    pass


class ShapeNotInLevel(ValueError):
    pass


class Node(NamedTuple):
    j: int
    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.j},{self.x},{self.y})"


@dataclass(frozen=True)
class Multipartition:
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        components = tuple(tuple(part) for part in self.components)
        if not components:
            raise InvalidShape("A multipartition needs at least one component.")
        for part in components:
            if any(row <= 0 for row in part):
                raise InvalidShape(f"Rows must be positive in {list(part)}.")
            if any(a < b for a, b in zip(part, part[1:])):
                raise InvalidShape(f"Rows must be weakly decreasing in {list(part)}.")
        object.__setattr__(self, "components", components)

    @classmethod
    def empty(cls, r: int) -> Multipartition:
        return cls(((),) * r)

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> Multipartition:
        return cls(tuple(tuple(part) for part in data))

    def to_json(self) -> list[list[int]]:
        return [list(part) for part in self.components]

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(sum(part) for part in self.components)

    def cells(self) -> frozenset[Node]:
        return frozenset(
            Node(j, x, y)
            for j, part in enumerate(self.components, start=1)
            for x, row in enumerate(part, start=1)
            for y in range(1, row + 1)
        )

    def sort_key(self):
        return (
            self.size,
            tuple((-sum(part), tuple(-row for row in part)) for part in self.components),
        )

    def label(self) -> str:
        """Compact label; a single component prints as its partition, e.g. `[2,1]`."""
        parts = ["[" + ",".join(str(row) for row in part) + "]" for part in self.components]
        if self.r == 1:
            return parts[0]
        return "[" + ",".join(parts) + "]"

    def __str__(self) -> str:
        return self.label()


def addable_nodes(shape: Multipartition) -> list[Node]:
    nodes = []
    for j, part in enumerate(shape.components, start=1):
        for x in range(1, len(part) + 2):
            current = part[x - 1] if x <= len(part) else 0
            above = part[x - 2] if x >= 2 else math.inf
            if current < above:
                nodes.append(Node(j, x, current + 1))
    return nodes


def removable_nodes(shape: Multipartition) -> list[Node]:
    nodes = []
    for j, part in enumerate(shape.components, start=1):
        for x in range(1, len(part) + 1):
            below = part[x] if x < len(part) else 0
            if part[x - 1] > below:
                nodes.append(Node(j, x, part[x - 1]))
    return nodes


def add_node(shape: Multipartition, node: Node) -> Multipartition:
    if node not in addable_nodes(shape):
        raise NodeNotIncident(f"{node} is not addable to {shape}.")
    components = [list(part) for part in shape.components]
    part = components[node.j - 1]
    if node.x > len(part):
        part.append(1)
    else:
        part[node.x - 1] += 1
    return Multipartition(tuple(tuple(part) for part in components))


def remove_node(shape: Multipartition, node: Node) -> Multipartition:
    if node not in removable_nodes(shape):
        raise NodeNotIncident(f"{node} is not removable from {shape}.")
    components = [list(part) for part in shape.components]
    part = components[node.j - 1]
    part[node.x - 1] -= 1
    if not part[-1]:
        part.pop()
    return Multipartition(tuple(tuple(part) for part in components))


def neighbours(shape: Multipartition) -> Iterator[tuple[Node, bool, Multipartition]]:
    """Shapes one step away, adds before removes, each sorted by node.

    Yields:
        (node, added, new shape) triples.
    """
    for node in sorted(addable_nodes(shape)):
        yield node, True, add_node(shape, node)
    for node in sorted(removable_nodes(shape)):
        yield node, False, remove_node(shape, node)


def content(node: Node, p: GroundParams) -> RatFunc:
    """Multiplicative content u_j q^(2(y - x))."""
    return p.u[node.j - 1] * p.q ** (2 * (node.y - node.x))


def b_value(node: Node, shape: Multipartition, p: GroundParams) -> RatFunc:
    """Content of an addable node, inverse content of a removable one.

    Raises:
        NodeNotIncident: node is neither addable nor removable.
    """
    if node in addable_nodes(shape):
        return content(node, p)
    if node in removable_nodes(shape):
        return content(node, p).inverse()
    raise NodeNotIncident(f"{node} is neither addable to nor removable from {shape}.")


def gamma_level(n: int, r: int) -> list[Multipartition]:
    """All r-multipartitions of size <= n and of the same parity as n."""
    if n < 0:
        raise ValueError(f"Level must be non-negative, got {n}.")
    level = {Multipartition.empty(r)}
    for _ in range(n):
        level = {new for shape in level for _, _, new in neighbours(shape)}
    return sorted(level, key=Multipartition.sort_key)


@dataclass(frozen=True)
class BranchingGraph:
    """Levels Gamma_0..Gamma_n and the edges between consecutive levels."""

    r: int
    levels: tuple[tuple[Multipartition, ...], ...]
    edges: tuple[frozenset[tuple[Multipartition, Multipartition]], ...]

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def parents(self, k: int, shape: Multipartition) -> list[Multipartition]:
        """Shapes of level k - 1 joined to shape by an edge."""
        return [mu for mu in self.levels[k - 1] if (mu, shape) in self.edges[k - 1]]


def build_branching_graph(n: int, r: int) -> BranchingGraph:
    levels = [tuple(gamma_level(0, r))]
    edges = []
    queue = deque(levels[0])
    for k in range(n):
        next_level = set()
        level_edges = set()
        while queue:
            mu = queue.popleft()
            for _, _, lam in neighbours(mu):
                level_edges.add((mu, lam))
                next_level.add(lam)
        ordered = tuple(sorted(next_level, key=Multipartition.sort_key))
        levels.append(ordered)
        edges.append(frozenset(level_edges))
        queue.extend(ordered)
    return BranchingGraph(r=r, levels=tuple(levels), edges=tuple(edges))


@dataclass(frozen=True)
class UpDownTableau:
    """A path emptyset = shapes[0], shapes[1], ..., shapes[n] in the branching graph."""

    shapes: tuple[Multipartition, ...]

    def __post_init__(self):
        shapes = tuple(self.shapes)
        if not shapes or shapes[0] != Multipartition.empty(shapes[0].r):
            raise InvalidShape("An up-down tableau starts at the empty multipartition.")
        for before, after in zip(shapes, shapes[1:]):
            if len(before.cells() ^ after.cells()) != 1:
                raise InvalidShape(f"{before} and {after} differ by more than one node.")
        object.__setattr__(self, "shapes", shapes)

    @classmethod
    def from_json(cls, data) -> UpDownTableau:
        return cls(tuple(Multipartition.from_json(shape) for shape in data))

    def to_json(self) -> list[list[list[int]]]:
        return [shape.to_json() for shape in self.shapes]

    @property
    def n(self) -> int:
        return len(self.shapes) - 1

    @property
    def shape(self) -> Multipartition:
        return self.shapes[-1]

    def steps(self) -> list[tuple[Node, bool]]:
        """The node changed at each step and whether it was added."""
        steps = []
        for before, after in zip(self.shapes, self.shapes[1:]):
            (node,) = before.cells() ^ after.cells()
            steps.append((node, node in after.cells()))
        return steps

    def truncate(self) -> UpDownTableau:
        """The tableau T' of length n - 1."""
        return UpDownTableau(self.shapes[:-1])

    def extend(self, shape: Multipartition) -> UpDownTableau:
        return UpDownTableau(self.shapes + (shape,))

    def __str__(self) -> str:
        return " -> ".join(str(shape) for shape in self.shapes)


def in_level(shape: Multipartition, n: int) -> bool:
    return shape.size <= n and (n - shape.size) % 2 == 0


def enumerate_tableaux(
    n: int, r: int, shape: Multipartition | None = None
) -> list[UpDownTableau]:
    """All up-down tableaux of length n, optionally ending at shape.

    Tableaux are listed depth-first with node choices ordered as in
    `neighbours`.

    Raises:
        ShapeNotInLevel: shape is not in Gamma_n.
    """
    if shape is not None:
        if shape.r != r or not in_level(shape, n):
            raise ShapeNotInLevel(f"{shape} is not in level {n} for r={r}.")
        target = shape.cells()
    tableaux = []
    path = [Multipartition.empty(r)]

    def extend(steps_left: int):
        current = path[-1]
        if shape is not None and len(current.cells() ^ target) > steps_left:
            return
        if not steps_left:
            tableaux.append(UpDownTableau(tuple(path)))
            return
        for _, _, new in neighbours(current):
            path.append(new)
            extend(steps_left - 1)
            path.pop()

    extend(n)
    logger.debug("Enumerated %d tableaux of length %d", len(tableaux), n)
    return tableaux


def tableau_counts(n: int, r: int) -> dict[Multipartition, int]:
    """|T(n, shape)| for every shape of Gamma_n, by the branching recursion."""
    counts = {Multipartition.empty(r): 1}
    for _ in range(n):
        new_counts: dict[Multipartition, int] = {}
        for mu, count in counts.items():
            for _, _, lam in neighbours(mu):
                new_counts[lam] = new_counts.get(lam, 0) + count
        counts = new_counts
    return {shape: counts[shape] for shape in sorted(counts, key=Multipartition.sort_key)}


def count_tableaux(n: int, shape: Multipartition) -> int:
    if not in_level(shape, n):
        raise ShapeNotInLevel(f"{shape} is not in level {n}.")
    return tableau_counts(n, shape.r)[shape]


def double_factorial(k: int) -> int:
    return math.prod(range(k, 0, -2))


def dimension_identity(n: int, r: int) -> tuple[int, int]:
    """(sum over Gamma_n of |T(n, shape)|^2, r^n (2n - 1)!!)."""
    lhs = sum(count * count for count in tableau_counts(n, r).values())
    return lhs, r**n * double_factorial(2 * n - 1)


def render_multipartition(shape: Multipartition) -> str:
    """ASCII Young diagrams, one block per component."""
    blocks = []
    for j, part in enumerate(shape.components, start=1):
        rows = ["[]" * row for row in part] or ["-"]
        blocks.append("\n".join([f"{j}:"] + ["  " + row for row in rows]))
    return "\n".join(blocks)
