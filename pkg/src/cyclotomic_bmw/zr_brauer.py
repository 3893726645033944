"""Z_r-Brauer diagrams, their products and the Markov trace.

Endpoints of an n-strand diagram are numbered 0..2n-1: top(i) is i - 1 and
bot(i) is n + i - 1. A strand joins two endpoints a < b and carries a label
in Z_r read along the orientation a -> b. Reversing the orientation negates
the label, so every diagram has exactly one canonical form.

The product ab stacks b over a: the top row of ab is the top row of b and
the bottom row of ab is the bottom row of a. Closed loops are removed, each
contributing a loop parameter theta_j, where a loop with label k has
j = min(k mod r, r - k mod r).
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Hashable, Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from cyclotomic_bmw.laurent import LaurentRing
from cyclotomic_bmw.multipartitions import double_factorial
from cyclotomic_bmw.ratfunc import RatFunc

logger = logging.getLogger(__name__)


class InvalidMatching(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class ParameterMismatch(ValueError):
    pass


Strand = tuple[int, int, int]


def endpoint_name(e: int, n: int) -> str:
    return f"t{e + 1}" if e < n else f"b{e - n + 1}"


def parse_endpoint(name: str, n: int) -> int:
    """'t3' -> top(3), 'b1' -> bot(1).

    Raises:
        InvalidMatching: the endpoint does not exist on n strands.
    """
    row, index = name[0], int(name[1:])
    if not 1 <= index <= n:
        raise InvalidMatching(f"Endpoint {name} does not exist on {n} strands.")
    return index - 1 if row == "t" else n + index - 1


def loop_index(label: int, r: int) -> int:
    k = label % r
    return min(k, r - k)


@dataclass(frozen=True)
class ZrBrauerDiagram:
    n: int
    r: int
    strands: tuple[Strand, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "strands": [
                {
                    "ends": [endpoint_name(a, self.n), endpoint_name(b, self.n)],
                    "label": label,
                }
                for a, b, label in self.strands
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> ZrBrauerDiagram:
        n = data["n"]
        return canonicalize(
            n,
            data["r"],
            [
                (
                    parse_endpoint(strand["ends"][0], n),
                    parse_endpoint(strand["ends"][1], n),
                    strand.get("label", 0),
                )
                for strand in data["strands"]
            ],
        )

    def __str__(self) -> str:
        return " ".join(
            f"{endpoint_name(a, self.n)}-{endpoint_name(b, self.n)}[{label}]"
            for a, b, label in self.strands
        )


def canonicalize(n: int, r: int, strands: Iterable[Strand]) -> ZrBrauerDiagram:
    """Orient every strand from its smaller endpoint and reduce labels mod r.

    Raises:
        InvalidMatching: the strands do not form a perfect matching of the
            2n endpoints.
    """
    canonical = []
    seen: set[int] = set()
    for a, b, label in strands:
        for e in (a, b):
            if not 0 <= e < 2 * n:
                raise InvalidMatching(f"Endpoint {e} does not exist on {n} strands.")
            if e in seen:
                raise InvalidMatching(f"Endpoint {endpoint_name(e, n)} is used twice.")
            seen.add(e)
        if a == b:
            raise InvalidMatching(f"Strand joins {endpoint_name(a, n)} to itself.")
        if a > b:
            a, b, label = b, a, -label
        canonical.append((a, b, label % r))
    if len(seen) != 2 * n:
        raise InvalidMatching(f"Not every endpoint of {n} strands is used.")
    return ZrBrauerDiagram(n=n, r=r, strands=tuple(sorted(canonical)))


def _harvest(
    out_count: int, edges: Sequence[tuple[Hashable, Hashable, int]]
) -> tuple[list[Strand], list[int]]:
    """Follow strands through a glued picture.

    Integer vertices 0..out_count-1 are endpoints of the result; every other
    vertex must lie on exactly two edges. Labels are summed along each path
    with the sign given by the direction of travel.

    Returns:
        The strands between result endpoints and the labels of closed loops.
    """
    adjacent = defaultdict(list)
    for eid, (u, v, _) in enumerate(edges):
        adjacent[u].append(eid)
        adjacent[v].append(eid)
    used: set[int] = set()

    def walk(start, eid):
        vertex, total = start, 0
        while True:
            used.add(eid)
            u, v, label = edges[eid]
            if vertex == u:
                vertex, total = v, total + label
            else:
                vertex, total = u, total - label
            if isinstance(vertex, int):
                return vertex, total
            eid = next((e for e in adjacent[vertex] if e not in used), None)
            if eid is None:
                return vertex, total

    strands = []
    for start in range(out_count):
        (eid,) = adjacent[start]
        if eid not in used:
            end, total = walk(start, eid)
            strands.append((start, end, total))
    loops = []
    for eid, (u, _, _) in enumerate(edges):
        if eid not in used:
            loops.append(walk(u, eid)[1])
    return strands, loops


def compose_loops(
    a: ZrBrauerDiagram, b: ZrBrauerDiagram
) -> tuple[Counter, ZrBrauerDiagram]:
    """b stacked over a: loop counts per theta index and the remaining diagram.

    Raises:
        SizeMismatch: the diagrams differ in n or r.
    """
    if (a.n, a.r) != (b.n, b.r):
        raise SizeMismatch(
            f"Cannot compose diagrams with (n, r) = {(a.n, a.r)} and {(b.n, b.r)}."
        )
    n = a.n

    def upper(e):
        return e if e < n else ("mid", e - n)

    def lower(e):
        return ("mid", e) if e < n else e

    edges = [(upper(x), upper(y), k) for x, y, k in b.strands]
    edges += [(lower(x), lower(y), k) for x, y, k in a.strands]
    strands, loops = _harvest(2 * n, edges)
    counts = Counter(loop_index(k, a.r) for k in loops)
    return counts, canonicalize(n, a.r, strands)


def theta_monomial(counts: Counter, thetas: Sequence, offset: int = 0):
    """prod_j thetas[j]^counts[j] times thetas[0]^offset."""
    exponents = Counter(counts)
    exponents[0] += offset
    return reduce(
        lambda x, item: x * thetas[item[0]] ** item[1],
        sorted(exponents.items()),
        1,
    )


def compose(a: ZrBrauerDiagram, b: ZrBrauerDiagram, thetas: Sequence):
    """The product ab as (scalar, diagram)."""
    counts, c = compose_loops(a, b)
    return theta_monomial(counts, thetas), c


def identity_diagram(n: int, r: int) -> ZrBrauerDiagram:
    return canonicalize(n, r, [(i, n + i, 0) for i in range(n)])


def e_diagram(n: int, i: int, r: int) -> ZrBrauerDiagram:
    """E_i: caps joining positions i and i + 1 on both rows, all labels 0."""
    if not 1 <= i < n:
        raise InvalidMatching(f"E_{i} needs 1 <= i < n = {n}.")
    strands = [(i - 1, i, 0), (n + i - 1, n + i, 0)]
    strands += [(j, n + j, 0) for j in range(n) if j not in (i - 1, i)]
    return canonicalize(n, r, strands)


def vertical_diagram(
    perm: Sequence[int], labels: Sequence[int], r: int
) -> ZrBrauerDiagram:
    """top(i) joined to bot(perm[i]) with label labels[i]; perm is 0-based."""
    n = len(perm)
    if sorted(perm) != list(range(n)) or len(labels) != n:
        raise InvalidMatching(f"{list(perm)} is not a permutation of 0..{n - 1}.")
    return canonicalize(n, r, [(i, n + perm[i], labels[i]) for i in range(n)])


def include(d: ZrBrauerDiagram) -> ZrBrauerDiagram:
    """Add a vertical strand with label 0 on the right."""
    n = d.n

    def shift(e):
        return e if e < n else e + 1

    strands = [(shift(a), shift(b), k) for a, b, k in d.strands]
    strands.append((n, 2 * n + 1, 0))
    return canonicalize(n + 1, d.r, strands)


def closure_loops(d: ZrBrauerDiagram) -> tuple[Counter, ZrBrauerDiagram]:
    """cl_n(d): join top(n) to bot(n) by a label 0 strand.

    Returns:
        Loop counts and the resulting (n-1)-strand diagram.
    """
    n = d.n
    if n < 1:
        raise SizeMismatch("The closure needs at least one strand.")

    def vertex(e):
        if e == n - 1 or e == 2 * n - 1:
            return ("closed", e)
        return e if e < n else e - 1

    edges = [(vertex(a), vertex(b), k) for a, b, k in d.strands]
    edges.append((("closed", n - 1), ("closed", 2 * n - 1), 0))
    strands, loops = _harvest(2 * (n - 1), edges)
    counts = Counter(loop_index(k, d.r) for k in loops)
    return counts, canonicalize(n - 1, d.r, strands)


def trace_loops(d: ZrBrauerDiagram) -> Counter:
    """Loop counts after closing every strand top(i) to bot(i)."""
    n = d.n
    edges = [(("e", a), ("e", b), k) for a, b, k in d.strands]
    edges += [(("e", i), ("e", n + i), 0) for i in range(n)]
    _, loops = _harvest(0, edges)
    return Counter(loop_index(k, d.r) for k in loops)


def diagram_trace(d: ZrBrauerDiagram, thetas: Sequence):
    """epsilon(d) = theta_0^-n prod_j theta_j^(m_j) over the loops of the closure."""
    return theta_monomial(trace_loops(d), thetas, offset=-d.n)


def flip(d: ZrBrauerDiagram) -> ZrBrauerDiagram:
    """Reflect top and bottom rows; labels follow the reflected orientation."""
    n = d.n

    def mirror(e):
        return e + n if e < n else e - n

    return canonicalize(n, d.r, [(mirror(a), mirror(b), k) for a, b, k in d.strands])


def _perfect_matchings(points: tuple[int, ...]):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        for matching in _perfect_matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, partner)] + matching


def enumerate_diagrams(n: int, r: int) -> list[ZrBrauerDiagram]:
    """All r^n (2n - 1)!! diagrams, matchings first, then labels."""
    diagrams = []
    for matching in _perfect_matchings(tuple(range(2 * n))):
        for labels in itertools.product(range(r), repeat=n):
            diagrams.append(
                canonicalize(
                    n, r, [(a, b, k) for (a, b), k in zip(matching, labels)]
                )
            )
    return diagrams


def diagram_count_formula(n: int, r: int) -> int:
    return r**n * double_factorial(2 * n - 1)


def theta_ring(r: int) -> LaurentRing:
    return LaurentRing(tuple(f"th{j}" for j in range(r // 2 + 1)))


def symbolic_thetas(r: int) -> tuple[RatFunc, ...]:
    ring = theta_ring(r)
    return tuple(RatFunc.gen(ring, name) for name in ring.names)


def numeric_thetas(r: int, values: Sequence[Fraction | int]) -> tuple[RatFunc, ...]:
    if len(values) != r // 2 + 1:
        raise ParameterMismatch(
            f"Expected {r // 2 + 1} loop parameters, got {len(values)}."
        )
    if Fraction(values[0]) == 0:
        raise ParameterMismatch("theta_0 must be invertible.")
    ring = theta_ring(r)
    return tuple(RatFunc.constant(ring, value) for value in values)


@dataclass(frozen=True)
class DiagramElement:
    """A linear combination of diagrams with coefficients in Q(theta)."""

    n: int
    r: int
    thetas: tuple[RatFunc, ...]
    terms: dict[ZrBrauerDiagram, RatFunc] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self,
            "terms",
            {d: c for d, c in self.terms.items() if not c.is_zero()},
        )

    @classmethod
    def from_diagram(cls, d: ZrBrauerDiagram, thetas: Sequence[RatFunc]):
        return cls(
            n=d.n, r=d.r, thetas=tuple(thetas), terms={d: RatFunc(thetas[0].ring.one())}
        )

    @classmethod
    def zero(cls, n: int, r: int, thetas: Sequence[RatFunc]) -> DiagramElement:
        return cls(n=n, r=r, thetas=tuple(thetas))

    def _check_compatible(self, other: DiagramElement):
        if (self.n, self.r) != (other.n, other.r) or self.thetas != other.thetas:
            raise ParameterMismatch("Elements belong to different algebras.")

    def _with_terms(self, terms: dict) -> DiagramElement:
        return DiagramElement(n=self.n, r=self.r, thetas=self.thetas, terms=terms)

    def __add__(self, other: DiagramElement) -> DiagramElement:
        self._check_compatible(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = (terms[d] + c).cancel() if d in terms else c
        return self._with_terms(terms)

    def __neg__(self) -> DiagramElement:
        return self._with_terms({d: -c for d, c in self.terms.items()})

    def __sub__(self, other: DiagramElement) -> DiagramElement:
        return self + (-other)

    def __mul__(self, other) -> DiagramElement:
        if not isinstance(other, DiagramElement):
            return self._with_terms(
                {d: (c * other).cancel() for d, c in self.terms.items()}
            )
        self._check_compatible(other)
        terms: dict[ZrBrauerDiagram, RatFunc] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                scalar, c = compose(a, b, self.thetas)
                value = x * y * scalar
                terms[c] = terms[c] + value if c in terms else value
        return self._with_terms({d: c.cancel() for d, c in terms.items()})

    def __rmul__(self, scalar) -> DiagramElement:
        return self * scalar

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramElement):
            return NotImplemented
        try:
            return not (self - other).terms
        except ParameterMismatch:
            return False

    def is_zero(self) -> bool:
        return not self.terms

    def map_diagrams(self, f) -> DiagramElement:
        """Apply a linear map given on diagrams as f(d) -> (scalar, diagram)."""
        terms: dict[ZrBrauerDiagram, RatFunc] = {}
        n = self.n
        for d, c in self.terms.items():
            scalar, image = f(d)
            n = image.n
            value = c * scalar
            terms[image] = terms[image] + value if image in terms else value
        return DiagramElement(
            n=n,
            r=self.r,
            thetas=self.thetas,
            terms={d: c.cancel() for d, c in terms.items()},
        )


def include_element(x: DiagramElement) -> DiagramElement:
    if not x.terms:
        return DiagramElement.zero(x.n + 1, x.r, x.thetas)
    return x.map_diagrams(lambda d: (1, include(d)))


def conditional_expectation(x: DiagramElement) -> DiagramElement:
    """epsilon_n(d) = theta_0^-1 cl_n(d), extended linearly."""

    def expectation(d):
        counts, c = closure_loops(d)
        return theta_monomial(counts, x.thetas, offset=-1), c

    if not x.terms:
        return DiagramElement.zero(x.n - 1, x.r, x.thetas)
    return x.map_diagrams(expectation)


def markov_trace(x: DiagramElement) -> RatFunc:
    total = RatFunc(x.thetas[0].ring.zero())
    for d, c in x.terms.items():
        total = total + c * diagram_trace(d, x.thetas)
    return total.cancel()


def gram_matrix(
    n: int, r: int, thetas: Sequence[Fraction], threads: int = 1
) -> list[list[Fraction]]:
    """G[d, d'] = epsilon(d d') over the diagram basis at numeric loop parameters."""
    thetas = [Fraction(theta) for theta in thetas]
    basis = enumerate_diagrams(n, r)

    def row(a: ZrBrauerDiagram) -> list[Fraction]:
        entries = []
        for b in basis:
            counts, c = compose_loops(a, b)
            entries.append(theta_monomial(counts + trace_loops(c), thetas, offset=-n))
        return entries

    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(executor.map(row, basis))
    logger.debug("Gram matrix of size %d for n=%d, r=%d", len(basis), n, r)
    return rows


def gram_determinant(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant over QQ."""
    size = len(rows)
    if not size:
        return Fraction(1)
    matrix = DomainMatrix(
        [[QQ(x.numerator, x.denominator) for x in row] for row in rows],
        (size, size),
        QQ,
    )
    det = matrix.det()
    return Fraction(int(det.numerator), int(det.denominator))
