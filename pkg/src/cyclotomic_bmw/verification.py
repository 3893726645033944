"""The verification suite behind `cybmw verify all` and the randomized checks.

Randomized checks evaluate identities at random rational points. Every trial
draws from its own PCG64 stream spawned from the user's seed, so results do
not depend on the number of worker threads.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

import numpy as np
import sympy

from cyclotomic_bmw.admissibility import (
    check_cauchy_and_residue_identities,
    check_gamma_system,
    check_wilcox_yu,
)
from cyclotomic_bmw.datatypes import RelationResult, zero_check
from cyclotomic_bmw.generating_functions import (
    Z1_closed_form,
    Z1_from_gammas,
    delta_from_mu,
)
from cyclotomic_bmw.ground_ring import GroundParams, transformed_params
from cyclotomic_bmw.multipartitions import (
    Multipartition,
    addable_nodes,
    dimension_identity,
    enumerate_tableaux,
    gamma_level,
    removable_nodes,
    tableau_counts,
)
from cyclotomic_bmw.specialization import Specialization
from cyclotomic_bmw.trace_weights import (
    markov_sum,
    qtilde,
    qtilde_along,
    qtilde_recursion_check,
    semisimple_sufficient,
    telescoping_residual,
    weight_tables,
    ztilde,
)
from cyclotomic_bmw.w2_module import (
    build_w2_rep,
    check_spectral_idempotents,
    delta_negative_consistency,
    verify_w2_relations,
)
from cyclotomic_bmw.zr_brauer import (
    DiagramElement,
    ZrBrauerDiagram,
    canonicalize,
    conditional_expectation,
    diagram_count_formula,
    e_diagram,
    enumerate_diagrams,
    flip,
    gram_determinant,
    gram_matrix,
    identity_diagram,
    include_element,
    markov_trace,
    numeric_thetas,
    symbolic_thetas,
)

logger = logging.getLogger(__name__)

Mode = Literal["symbolic", "randomized"]

# numerators and denominators of sampled rationals stay below this bound
SAMPLE_BOUND = 10**6

SECTIONS = (
    "ground-ring",
    "multipartitions",
    "trace-weights",
    "semisimplicity",
    "w2-module",
    "zr-brauer",
    "trace-form",
)


def trial_generators(seed: int, trials: int) -> list[np.random.Generator]:
    """One independent PCG64 generator per trial."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def random_rational(rng: np.random.Generator, bound: int = SAMPLE_BOUND) -> Fraction:
    """A nonzero rational with numerator and denominator at most bound."""
    while True:
        numerator = int(rng.integers(-bound, bound + 1))
        if numerator:
            return Fraction(numerator, int(rng.integers(1, bound + 1)))


def degenerate_point(q: Fraction, u: list[Fraction]) -> bool:
    """True at q^2 = 1, u_i = u_j, u_i u_j = 1 or u_j in {+-q, +-q^-1}."""
    if q * q == 1:
        return True
    forbidden = {q, -q, 1 / q, -1 / q}
    for i, u_i in enumerate(u):
        if u_i in forbidden:
            return True
        for u_j in u[i:]:
            if u_i * u_j == 1:
                return True
        if u_i in u[i + 1 :]:
            return True
    return False


def random_specialization(rng: np.random.Generator, r: int) -> Specialization:
    """Values for q, u1..ur away from the degenerate set, by rejection."""
    while True:
        q = random_rational(rng)
        u = [random_rational(rng) for _ in range(r)]
        if not degenerate_point(q, u):
            assignment = {"q": q} | {f"u{j}": u_j for j, u_j in enumerate(u, start=1)}
            return Specialization(assignment)


def specialized_params(spec: Specialization, r: int) -> GroundParams:
    return GroundParams.specialized(
        r, spec["q"], [spec[f"u{j}"] for j in range(1, r + 1)]
    )


def random_parameters(rng: np.random.Generator, r: int) -> GroundParams:
    """Random specialized parameters with an invertible delta_0."""
    while True:
        p = specialized_params(random_specialization(rng, r), r)
        if not p.delta(0).is_zero():
            return p


def randomized(
    check: Callable[[GroundParams], list[RelationResult]],
    r: int,
    trials: int,
    seed: int,
    threads: int = 1,
) -> list[RelationResult]:
    """Run check at `trials` random points and tag each result with its trial."""

    def run(item):
        trial, rng = item
        p = random_parameters(rng, r)
        logger.debug("Trial %d at q=%s", trial, p.q)
        return [
            RelationResult(
                name=result.name,
                passed=result.passed,
                residual=result.residual,
                trial=trial,
                description=result.description,
            )
            for result in check(p)
        ]

    generators = enumerate(trial_generators(seed, trials))
    with ThreadPoolExecutor(max_workers=threads) as executor:
        batches = list(executor.map(run, generators))
    return [result for batch in batches for result in batch]


def ground_ring_checks(p: GroundParams, window: int = 5) -> list[RelationResult]:
    results = check_gamma_system(p)
    results += check_cauchy_and_residue_identities(p)
    results += check_wilcox_yu(p, recursion_window=window).relations
    difference = (Z1_closed_form(p) - Z1_from_gammas(p)).cancel()
    results.append(zero_check("Z1 closed form = gamma sum", difference))
    for a in range(window + 1):
        results.append(
            zero_check(
                f"delta from mu a={a}", (delta_from_mu(p, a) - p.delta(a)).cancel()
            )
        )
    for kind in ("invert-q", "negate"):
        other = transformed_params(p, kind).gammas.gamma
        for j, (g, h) in enumerate(zip(p.gammas.gamma, other), start=1):
            results.append(
                zero_check(f"gamma_{j} invariant under {kind}", (g - h).cancel())
            )
    return results


def multipartition_checks(n: int, r: int) -> list[RelationResult]:
    results = []
    for k in range(n + 1):
        lhs, rhs = dimension_identity(k, r)
        results.append(
            RelationResult(
                name=f"dimension identity n={k}",
                passed=lhs == rhs,
                residual="0" if lhs == rhs else f"{lhs} != {rhs}",
            )
        )
    for k in range(1, n + 1):
        counts = tableau_counts(k, r)
        enumerated = {}
        for tableau in enumerate_tableaux(k, r):
            enumerated[tableau.shape] = enumerated.get(tableau.shape, 0) + 1
        ok = enumerated == counts
        results.append(
            RelationResult(
                name=f"tableau enumeration matches recursion n={k}",
                passed=ok,
                residual="0" if ok else "counts differ",
            )
        )
    bad = [
        shape
        for shape in gamma_level(n, r)
        if (len(addable_nodes(shape)) + len(removable_nodes(shape)) - r) % 2
    ]
    results.append(
        RelationResult(
            name="node count parity",
            passed=not bad,
            residual="0" if not bad else ", ".join(str(shape) for shape in bad),
        )
    )
    return results


def trace_weight_checks(
    p: GroundParams, n: int, threads: int = 1
) -> list[RelationResult]:
    results = []
    tables = weight_tables(n, p, threads)
    empty = Multipartition.empty(p.r)
    if n >= 1:
        for j in range(1, p.r + 1):
            shape = Multipartition(
                tuple((1,) if i == j else () for i in range(1, p.r + 1))
            )
            expected = p.gammas.gamma[j - 1] / p.delta(0)
            results.append(
                zero_check(
                    f"one-strand weight j={j}", (tables[1][shape] - expected).cancel()
                )
            )
    for k, table in enumerate(tables):
        results.append(zero_check(f"markov sum n={k}", markov_sum(k, p, table) - 1))
        zeros = [shape for shape, weight in table.entries.items() if weight.is_zero()]
        results.append(
            RelationResult(
                name=f"nonzero weights n={k}",
                passed=not zeros,
                residual="0" if not zeros else ", ".join(str(shape) for shape in zeros),
            )
        )
    for k, table in enumerate(tables[:-1]):
        for shape, weight in table.entries.items():
            results.append(
                zero_check(
                    f"telescoping n={k} shape={shape}",
                    telescoping_residual(shape, weight, p),
                )
            )
    results.append(
        zero_check(
            "Z~ of empty shape = Z1", (ztilde(empty, p) - Z1_closed_form(p)).cancel()
        )
    )
    for k in range(n):
        for shape in gamma_level(k, p.r):
            if shape.size != k:
                continue
            for node in addable_nodes(shape):
                results.append(
                    zero_check(
                        f"Q~ recursion shape={shape} node={node}",
                        qtilde_recursion_check(shape, node, p),
                    )
                )
    for tableau in enumerate_tableaux(min(n, 3), p.r):
        results.append(
            zero_check(
                f"Q~ along {tableau}",
                (qtilde_along(tableau, p) - qtilde(tableau.shape, p).value).cancel(),
            )
        )
    return results


def w2_checks(p: GroundParams, window: int = 5) -> list[RelationResult]:
    rep = build_w2_rep(p)
    results = verify_w2_relations(rep, p, window)
    results += check_spectral_idempotents(rep, p)
    results += delta_negative_consistency(p, window, rep)
    return results


def random_diagram(n: int, r: int, rng: np.random.Generator) -> ZrBrauerDiagram:
    points = [int(x) for x in rng.permutation(2 * n)]
    labels = [int(x) for x in rng.integers(0, r, size=n)]
    return canonicalize(
        n, r, [(points[2 * i], points[2 * i + 1], labels[i]) for i in range(n)]
    )


def _element_check(
    name: str, lhs: DiagramElement, rhs: DiagramElement
) -> RelationResult:
    difference = lhs - rhs
    if difference.is_zero():
        return RelationResult(name=name, passed=True)
    d, c = next(iter(difference.terms.items()))
    return RelationResult(name=name, passed=False, residual=f"{c} * ({d})")


@dataclass(frozen=True)
class SampleCounts:
    """Random samples per family of diagram algebra identities."""

    associativity: int = 200
    trace: int = 500
    bimodule: int = 100

    def split(self, trials: int) -> SampleCounts:
        """Counts per trial so that `trials` trials reach the totals."""
        return SampleCounts(
            associativity=math.ceil(self.associativity / trials),
            trace=math.ceil(self.trace / trials),
            bimodule=math.ceil(self.bimodule / trials),
        )


def _sampled(
    name: str, samples: int, check: Callable[[], RelationResult]
) -> RelationResult:
    """Run check `samples` times and report the first failure."""
    label = f"{name} ({samples} samples)"
    for sample in range(samples):
        result = check()
        if not result.passed:
            return RelationResult(
                name=label, passed=False, residual=f"sample {sample}: {result.residual}"
            )
    return RelationResult(name=label, passed=True)


def brauer_checks(
    n: int,
    r: int,
    rng: np.random.Generator,
    samples: SampleCounts = SampleCounts(),
    thetas=None,
) -> list[RelationResult]:
    """Algebra, trace and conditional expectation identities on random diagrams.

    Without explicit thetas the loop parameters stay symbolic.
    """
    if thetas is None:
        thetas = symbolic_thetas(r)
    results = []
    for k in range(n + 1):
        count = len(enumerate_diagrams(k, r))
        expected = diagram_count_formula(k, r)
        tableau_total = dimension_identity(k, r)[0]
        ok = count == expected == tableau_total
        results.append(
            RelationResult(
                name=f"diagram count n={k}",
                passed=ok,
                residual="0" if ok else f"{count}, {expected}, {tableau_total}",
            )
        )
    if n < 1:
        return results

    def element(d: ZrBrauerDiagram) -> DiagramElement:
        return DiagramElement.from_diagram(d, thetas)

    def diagrams(k: int, m: int = n):
        return [random_diagram(m, r, rng) for _ in range(k)]

    one = element(identity_diagram(n, r))
    results.append(zero_check("trace of identity", markov_trace(one) - 1))

    def associativity():
        x, y, z = (element(d) for d in diagrams(3))
        return _element_check("", (x * y) * z, x * (y * z))

    def unit():
        (x,) = (element(d) for d in diagrams(1))
        return _element_check("", one * x, x * one)

    def antihomomorphism():
        a, b = diagrams(2)
        flipped = (element(a) * element(b)).map_diagrams(lambda d: (1, flip(d)))
        return _element_check("", flipped, element(flip(b)) * element(flip(a)))

    def trace_property():
        x, y = (element(d) for d in diagrams(2))
        return zero_check("", markov_trace(x * y) - markov_trace(y * x))

    def trace_through_expectation():
        (x,) = (element(d) for d in diagrams(1))
        return zero_check("", markov_trace(conditional_expectation(x)) - markov_trace(x))

    def flip_preserves_trace():
        (a,) = diagrams(1)
        return zero_check("", markov_trace(element(flip(a))) - markov_trace(element(a)))

    results.append(_sampled("associativity", samples.associativity, associativity))
    results.append(_sampled("identity is a unit", samples.associativity, unit))
    results.append(
        _sampled("flip antihomomorphism", samples.associativity, antihomomorphism)
    )
    results.append(_sampled("trace property", samples.trace, trace_property))
    results.append(
        _sampled("trace through expectation", samples.trace, trace_through_expectation)
    )
    results.append(_sampled("flip preserves trace", samples.trace, flip_preserves_trace))

    if n >= 2:
        E = element(e_diagram(n, n - 1, r))

        def bimodule():
            (x,) = (element(d) for d in diagrams(1))
            u, v = (element(d) for d in diagrams(2, n - 1))
            return _element_check(
                "",
                conditional_expectation(include_element(u) * x * include_element(v)),
                u * conditional_expectation(x) * v,
            )

        def inverts_inclusion():
            (u,) = (element(d) for d in diagrams(1, n - 1))
            return _element_check("", conditional_expectation(include_element(u)), u)

        def markov_property():
            (u,) = (element(d) for d in diagrams(1, n - 1))
            return zero_check(
                "", markov_trace(include_element(u) * E) - markov_trace(u) / thetas[0]
            )

        results.append(_sampled("bimodule property", samples.bimodule, bimodule))
        results.append(
            _sampled("expectation inverts inclusion", samples.bimodule, inverts_inclusion)
        )
        results.append(_sampled("markov property", samples.bimodule, markov_property))

    for i in range(1, n):
        E = element(e_diagram(n, i, r))
        results.append(_element_check(f"E_{i}^2 = theta_0 E_{i}", E * E, E * thetas[0]))
        if i + 1 < n:
            F = element(e_diagram(n, i + 1, r))
            results.append(
                _element_check(f"E_{i} E_{i + 1} E_{i} = E_{i}", E * F * E, E)
            )
            results.append(
                _element_check(f"E_{i + 1} E_{i} E_{i + 1} = E_{i + 1}", F * E * F, F)
            )
    return results


def trace_form_checks(
    n: int, r: int, rng: np.random.Generator, threads: int = 1
) -> list[RelationResult]:
    """The trace form is non-degenerate at random loop parameters for 1..n strands."""
    results = []
    for k in range(1, n + 1):
        thetas = [random_rational(rng) for _ in range(r // 2 + 1)]
        determinant = gram_determinant(gram_matrix(k, r, thetas, threads))
        results.append(
            RelationResult(
                name=f"trace form nondegenerate n={k}",
                passed=determinant != 0,
                residual="0"
                if determinant
                else "determinant vanishes at thetas "
                + ", ".join(str(theta) for theta in thetas),
            )
        )
    return results


def generic_point(r: int) -> Specialization:
    """q = 2 and u_j the odd primes 3, 5, 7, ...; avoids every semisimplicity clause."""
    primes = [int(sympy.prime(j + 1)) for j in range(1, r + 1)]
    assignment = {"q": 2} | {f"u{j}": u_j for j, u_j in enumerate(primes, start=1)}
    return Specialization(assignment)


def semisimplicity_checks(n: int, r: int) -> list[RelationResult]:
    """A generic point passes and a planted violation of each clause is caught."""
    point = generic_point(r)
    q = Fraction(2)
    u = [point[f"u{j}"] for j in range(1, r + 1)]
    ok, violations = semisimple_sufficient(point, n)
    results = [
        RelationResult(
            name=f"generic point n={n}",
            passed=ok,
            residual="0" if ok else "; ".join(violations),
        )
    ]
    planted = {"odd power of q": ([-q, *u[1:]], "u1 = -q^+1")}
    if r >= 2:
        planted["equal parameters"] = ([u[0], u[0], *u[2:]], "u1 = u2")
        if n >= 1:
            planted["ratio is a power of q^2"] = (
                [u[0], q * q * u[0], *u[2:]],
                "u1/u2 = q^-2",
            )
            planted["product is a power of q^2"] = (
                [u[0], q * q / u[0], *u[2:]],
                "u1*u2 = q^+2",
            )
    elif n >= 2:
        planted["product is a power of q^2"] = ([q * q], "u1*u1 = q^+4")
    for clause, (values, expected) in planted.items():
        assignment = {"q": q} | {f"u{j}": v for j, v in enumerate(values, start=1)}
        _, found = semisimple_sufficient(Specialization(assignment), n)
        results.append(
            RelationResult(
                name=f"detects {clause}",
                passed=expected in found,
                residual="0" if expected in found else f"{expected} not reported",
            )
        )
    return results


def verify_all(
    r: int,
    n: int,
    mode: Mode = "symbolic",
    trials: int = 20,
    seed: int = 0,
    threads: int = 1,
    window: int = 5,
    samples: SampleCounts = SampleCounts(),
) -> dict[str, list[RelationResult]]:
    """Run every section of the suite.

    In symbolic mode the parameter dependent sections run once over
    Q(q, u_1, ..., u_r). In randomized mode they run at `trials` random
    points and each result carries its trial number; the diagram samples are
    spread over the trials.
    """
    sections: dict[str, list[RelationResult]] = {}
    checks = {
        "ground-ring": lambda p: ground_ring_checks(p, window),
        "trace-weights": lambda p: trace_weight_checks(p, n),
        "w2-module": lambda p: w2_checks(p, window),
    }
    brauer_n = min(n, 3)
    brauer_rng, gram_rng = trial_generators(seed, 2)
    if mode == "symbolic":
        p = GroundParams.symbolic(r)
        for name, check in checks.items():
            logger.debug("Running section %s", name)
            sections[name] = check(p)
        sections["zr-brauer"] = brauer_checks(brauer_n, r, brauer_rng, samples)
    else:
        for name, check in checks.items():
            logger.debug("Running section %s with %d trials", name, trials)
            sections[name] = randomized(check, r, trials, seed, threads)
        brauer = []
        per_trial = samples.split(trials)
        for trial, rng in enumerate(trial_generators(seed, trials)):
            values = [random_rational(rng) for _ in range(r // 2 + 1)]
            thetas = numeric_thetas(r, values)
            for result in brauer_checks(brauer_n, r, rng, per_trial, thetas=thetas):
                result.trial = trial
                brauer.append(result)
        sections["zr-brauer"] = brauer
    sections["multipartitions"] = multipartition_checks(n, r)
    sections["semisimplicity"] = semisimplicity_checks(n, r)
    sections["trace-form"] = trace_form_checks(min(n, 2), r, gram_rng, threads)
    return {name: sections[name] for name in SECTIONS}
