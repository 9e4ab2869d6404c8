"""Verification suite run by ``ext_selftest``.

Each check walks a family of instances and records how many instances it
examined and which ones failed. The families are:

* endomorphism rings of every corpus object with nonzero end terms (ideal laws,
  product decomposition modulo the radical, type bound);
* agreement of every applicable decider with the brute-force oracle on lists
  of at most two corpus objects, objects with a zero end term included, plus
  the digraphs built from every isomorphism found between objects with
  nonzero end terms;
* two fixed families over ``Z/6`` (crossed simple extensions and the exchange
  family) and split sums ``0 -> U -> U ⊕ V -> V -> 0``;
* every bipartite digraph with ``|X| = |Y|`` up to a size;
* the class lemmas on pairs of objects, isomorphic presentations included.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
import time
from collections.abc import Callable, Sequence

from attrs import define, field

from modext.corpus import candidate_groups, generate_corpus, in_u_objects
from modext.data import ClassLabel, DecisionMethod, EndTerm
from modext.engine.caps import Caps
from modext.engine.classes import (
    composite_witness,
    end_term,
    iso_via_classes,
    same_class,
    split_criteria,
)
from modext.engine.decision import (
    applicable_methods,
    decide,
    decide_completo,
    decide_completo_prime,
    decide_parziale,
    isomorphism_digraph,
)
from modext.engine.digraph import BipartiteDigraph, hall_condition, ks_relabel, out_neighborhood
from modext.engine.endomorphisms import (
    analyze,
    associated_ideal_formula,
    associated_ideal_membership,
    ideal_inclusions,
    module_type,
    verify_crt,
)
from modext.engine.extensions import (
    DirectSum,
    ExtObject,
    aggregate_caps,
    compose_morphisms,
    direct_sum,
    is_split,
    make_ext,
)
from modext.engine.groups import Group, canonicalize, hom_count, is_injective, is_surjective
from modext.engine.oracle import brute_force_iso
from modext.exceptions import ModextError, TheoremViolation

logger = logging.getLogger(__name__)

__all__ = [
    "CheckResult",
    "SelftestOptions",
    "SelftestReport",
    "crossed_pair",
    "exchange_family",
    "run_selftest",
    "split_sum",
]

# Split sums 0 -> Z/u -> Z/u + Z/v -> Z/v -> 0 checked against the componentwise description.
SPLIT_SUM_CHOICES = ((2, 2), (2, 4), (4, 2), (2, 3), (3, 9), (4, 8), (9, 3))

# Above this many composition pairs a lemma check that composes morphisms is skipped.
MAX_COMPOSITIONS = 5000

# The associated-ideal check walks every endomorphism of the second object while the
# number of endomorphisms times the composition pairs stays within this budget.
MAX_ASSOCIATED_WORK = 4096

FAILURES_KEPT = 20


@define
class CheckResult:
    """Counts for one check.

    Attributes:
        name: Check name.
        checks: Instances examined.
        failed: Instances that failed.
        failures: Descriptions of the first failures.
        seconds: Wall time spent.
        exhaustive: False if some instance was checked on a sample only.
    """

    name: str
    checks: int = 0
    failed: int = 0
    failures: list[str] = field(factory=list)
    seconds: float = 0.0
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, passed: bool, describe: Callable[[], str] | str) -> None:
        self.checks += 1
        if passed:
            return
        self.failed += 1
        if len(self.failures) < FAILURES_KEPT:
            self.failures.append(describe() if callable(describe) else describe)


@define(frozen=True)
class SelftestOptions:
    """Sizes of the families the suite walks.

    Attributes:
        max_order: Largest middle group of the endomorphism-ring corpus.
        lemma_max_order: Largest middle group for the lemma and decider families.
        primes: Primes of the corpora.
        max_pairs: Largest number of pairs per pairwise family; sampled beyond it.
        digraph_size: Largest ``|X| = |Y|`` of the exhaustive digraph family.
        seed: Seed for sampled pairs.
    """

    max_order: int = 144
    lemma_max_order: int = 36
    primes: tuple[int, ...] = (2, 3)
    max_pairs: int = 2000
    digraph_size: int = 3
    seed: int = 0


@define
class SelftestReport:
    results: list[CheckResult] = field(factory=list)

    @property
    def ok(self) -> bool:
        return all(result.ok for result in self.results)

    def as_dict(self, timings: bool = False) -> dict:
        checks = []
        for result in self.results:
            entry = {
                "name": result.name,
                "checks": result.checks,
                "failed": result.failed,
                "failures": list(result.failures),
                "exhaustive": result.exhaustive,
            }
            if timings:
                entry["seconds"] = round(result.seconds, 3)
            checks.append(entry)
        return {"kind": "selftest", "ok": self.ok, "checks": checks}


def _sample(items: list, limit: int, rng: random.Random) -> list:
    if len(items) <= limit:
        return items
    return sorted(rng.sample(items, limit), key=items.index)


def crossed_pair(caps: Caps | None = None) -> tuple[ExtObject, ExtObject]:
    """``0 -> Z/2 -> Z/6 -> Z/3 -> 0`` and ``0 -> Z/3 -> Z/6 -> Z/2 -> 0``."""
    B = canonicalize([6])
    return make_ext(B, [(1, 0)], caps), make_ext(B, [(0, 1)], caps)


def exchange_family(caps: Caps | None = None) -> tuple[list[ExtObject], list[ExtObject]]:
    """Two lists over ``Z/6`` with pairwise non-isomorphic summands and isomorphic sums.

    Left: ``Z/2 ⊕ Z/3`` with lower term ``Z/2`` and with lower term ``Z/3``.
    Right: ``Z/2 ⊕ Z/2`` and ``Z/3 ⊕ Z/3``, each with the first factor as lower term.
    """
    left, _ = crossed_pair(caps)
    _, other = crossed_pair(caps)
    right = [make_ext(Group((2, 2)), [(1, 0)], caps), make_ext(Group((3, 3)), [(1, 0)], caps)]
    return [left, other], right


def split_sum(u: int, v: int, caps: Caps | None = None) -> DirectSum:
    """``0 -> Z/u -> Z/u ⊕ Z/v -> Z/v -> 0`` as the sum of its lower and upper parts."""
    lower = make_ext(Group((u,)), [(1,)], caps)
    upper = make_ext(Group((v,)), [], caps)
    return direct_sum([lower, upper], caps)


def _timed(result: CheckResult, run: Callable[[], None]) -> CheckResult:
    started = time.perf_counter()
    try:
        run()
    except ModextError as exc:
        result.record(False, f"{type(exc).__name__}: {exc}")
    result.seconds = time.perf_counter() - started
    logger.info(f"{result.name}: {result.checks} checks, {result.failed} failed")
    return result


def check_endomorphism_rings(objects: Sequence[ExtObject], caps: Caps) -> CheckResult:
    result = CheckResult("endomorphism rings")

    def run():
        for X in objects:
            analysis = analyze(X, caps, strict=False)
            if not analysis.exhaustive:
                result.exhaustive = False
            result.record(not analysis.violations, lambda: f"{X.describe()}: {'; '.join(analysis.violations)}")
            result.record(verify_crt(analysis), lambda: f"{X.describe()}: E/J is not the product of the E/I")
            bound = module_type(X.a_type, caps) + module_type(X.c_type, caps)
            result.record(analysis.type_count <= bound, lambda: f"{X.describe()}: type above {bound}")

    return _timed(result, run)


def _sum_key(objects: Sequence[ExtObject]) -> tuple:
    return tuple(
        canonicalize([q for X in objects for q in getattr(X, term).factors])
        for term in ("B", "a_type", "c_type")
    )


def _bridge(result: CheckResult, left, right, oracle, caps: Caps) -> None:
    """Check the digraph of an isomorphism found by the oracle, for every label.

    Each digraph must satisfy the Hall condition, and every pair of the
    relabeling must share the class of its label.
    """
    for label in ClassLabel:
        D = isomorphism_digraph(oracle.left_sum, oracle.right_sum, oracle.isomorphism, label)
        result.record(bool(hall_condition(D)), lambda: f"{label} digraph of an isomorphism fails Hall: {D}")
        relabeling = ks_relabel(D)
        for x, y in relabeling.pairing:
            h, k = int(x[1:]) - 1, int(y[1:]) - 1
            result.record(
                bool(same_class(left[h], right[k], label, caps)),
                lambda: f"{label} pairing ({x}, {y}) does not preserve the class",
            )


def check_oracle_agreement(objects: Sequence[ExtObject], options: SelftestOptions, caps: Caps) -> CheckResult:
    result = CheckResult("deciders against oracle")
    rng = random.Random(options.seed)
    cap = aggregate_caps(caps).oracle_max_order
    lists = [(i,) for i in range(len(objects))]
    lists += [
        (i, j)
        for i, j in itertools.combinations_with_replacement(range(len(objects)), 2)
        if objects[i].B.order * objects[j].B.order <= cap
    ]
    buckets: dict[tuple, list[tuple[int, ...]]] = {}
    for members in lists:
        buckets.setdefault(_sum_key([objects[i] for i in members]), []).append(members)
    same = [pair for group in buckets.values() for pair in itertools.combinations(group, 2)]
    pairs = _sample(same, options.max_pairs, rng)
    if len(lists) > 1:
        cross = [tuple(rng.sample(lists, 2)) for _ in range(min(len(same), options.max_pairs) // 10 + 1)]
        keys = {members: _sum_key([objects[i] for i in members]) for members in lists}
        pairs += [(first, second) for first, second in cross if keys[first] != keys[second]]

    def run():
        for first, second in pairs:
            left = [objects[i] for i in first]
            right = [objects[j] for j in second]
            oracle = brute_force_iso(left, right, caps)
            methods = applicable_methods(left, right)
            for method in methods:
                if method is DecisionMethod.BRUTE_FORCE:
                    continue
                verdict = decide(method, left, right, caps).verdict
                result.record(
                    verdict == oracle.verdict,
                    lambda: f"{method} says {verdict}, oracle says {oracle.verdict} on {first} / {second}",
                )
            if oracle and DecisionMethod.COMPLETO in methods:
                _bridge(result, left, right, oracle, caps)

    return _timed(result, run)


def check_crossed_pair(caps: Caps) -> CheckResult:
    result = CheckResult("crossed simple extensions")

    def run():
        X, Y = crossed_pair(caps)
        for obj in (X, Y):
            analysis = analyze(obj, caps)
            result.record(analysis.type_count == 2, f"{obj.describe()} has type {analysis.type_count}")
            result.record(
                analysis.ideals[ClassLabel.MU] == analysis.ideals[ClassLabel.EU]
                and analysis.ideals[ClassLabel.ML] == analysis.ideals[ClassLabel.EL],
                f"{obj.describe()}: monogeny and epigeny ideals differ",
            )
            result.record(analysis.maximal_labels == frozenset(ClassLabel), "not every ideal is maximal")
        report = decide_parziale([X], [Y], caps)
        result.record(not report.verdict, "partial decider accepts the crossed pair")
        result.record(
            set(report.attempted) == set(ClassLabel) and all(p == ((0, 0),) for p in report.attempted.values()),
            "partial decider does not exhibit the four incompatible bijections",
        )
        result.record(not decide_completo([X], [Y], caps).verdict, "complete decider accepts the crossed pair")
        result.record(not brute_force_iso([X], [Y], caps).verdict, "oracle accepts the crossed pair")

    return _timed(result, run)


def check_split_sums(caps: Caps) -> CheckResult:
    result = CheckResult("split sums")

    def run():
        for u, v in SPLIT_SUM_CHOICES:
            S = split_sum(u, v, caps)
            X = S.obj
            analysis = analyze(X, caps)
            expected = u * v * math.gcd(u, v)
            result.record(analysis.size == expected, f"Z/{u} + Z/{v}: |E| = {analysis.size}, expected {expected}")
            bound = module_type(X.a_type, caps) + module_type(X.c_type, caps)
            result.record(analysis.type_count == bound, f"Z/{u} + Z/{v}: type {analysis.type_count} != {bound}")
            for index, f in enumerate(analysis.endos):
                corner = compose_morphisms(S.projections[0], compose_morphisms(f, S.injections[0])).f
                other = compose_morphisms(S.projections[1], compose_morphisms(f, S.injections[1])).f
                componentwise = {
                    ClassLabel.ML: not is_injective(corner),
                    ClassLabel.EL: not is_surjective(corner),
                    ClassLabel.MU: not is_injective(other),
                    ClassLabel.EU: not is_surjective(other),
                }
                for label, member in componentwise.items():
                    result.record(
                        (index in analysis.ideals[label]) == member,
                        lambda: f"Z/{u} + Z/{v}: endomorphism {index} breaks the {label} description",
                    )

    return _timed(result, run)


def check_exchange_family(caps: Caps) -> CheckResult:
    result = CheckResult("exchange family")

    def run():
        left, right = exchange_family(caps)
        summands = left + right
        for X, Y in itertools.combinations(summands, 2):
            result.record(not iso_via_classes(X, Y, caps), f"{X.describe()} and {Y.describe()} share all classes")
            result.record(not brute_force_iso([X], [Y], caps), f"oracle identifies {X.describe()} and {Y.describe()}")
        oracle = brute_force_iso(left, right, caps)
        result.record(oracle.verdict and oracle.isomorphism is not None, "oracle finds no isomorphism of the sums")
        for decider in (decide_parziale, decide_completo, decide_completo_prime):
            result.record(decider(left, right, caps).verdict, f"{decider.__name__} rejects the exchange family")
        if oracle:
            _bridge(result, left, right, oracle, caps)

    return _timed(result, run)


def _all_digraphs(n: int):
    xs = [f"x{i + 1}" for i in range(n)]
    ys = [f"y{i + 1}" for i in range(n)]
    possible = [(x, y) for x in xs for y in ys] + [(y, x) for y in ys for x in xs]
    for mask in range(1 << len(possible)):
        yield BipartiteDigraph(xs, ys, [edge for bit, edge in enumerate(possible) if mask >> bit & 1])


def check_digraphs(size: int, caps: Caps) -> CheckResult:
    result = CheckResult("bipartite digraphs")

    def violates(D: BipartiteDigraph, T) -> bool:
        return len(T) > len(out_neighborhood(D, T))

    def run():
        for n in range(size + 1):
            for D in _all_digraphs(n):
                brute = hall_condition(D, "brute", caps)
                matching = hall_condition(D, "matching", caps)
                result.record(brute.holds == matching.holds, lambda: f"modes disagree on {D}")
                for outcome in (brute, matching):
                    if not outcome.holds:
                        result.record(violates(D, outcome.witness), lambda: f"bad witness on {D}")
                try:
                    relabeling = ks_relabel(D)
                except TheoremViolation as exc:
                    result.record(False, f"{D}: {exc}")
                    continue
                result.record(relabeling.ok == matching.holds, lambda: f"pairing outcome differs from Hall on {D}")

    return _timed(result, run)


def _lemma_pairs(objects: Sequence[ExtObject], options: SelftestOptions) -> list[tuple[ExtObject, ExtObject]]:
    pairs = [(X, Y) for X, Y in itertools.permutations(objects, 2)]
    return _sample(pairs, options.max_pairs, random.Random(options.seed))


def check_class_lemmas(objects: Sequence[ExtObject], options: SelftestOptions, caps: Caps) -> list[CheckResult]:
    """Class lemmas on ordered pairs of objects, and split lemmas on single objects."""
    names = (
        "class collapse",
        "inclusion transfer",
        "class propagation",
        "inclusion poset",
        "isomorphism by classes",
        "associated ideals",
        "maximality transfer",
        "coincidence transfer",
        "composite witness",
        "split criteria",
        "split decomposition",
    )
    results = {name: CheckResult(name) for name in names}
    started = time.perf_counter()

    def pair_checks(X: ExtObject, Y: ExtObject) -> None:
        ex, ey = analyze(X, caps), analyze(Y, caps)
        classes = {label: bool(same_class(X, Y, label, caps)) for label in ClassLabel}
        where = f"{X.describe()} / {Y.describe()}"
        # Finite end terms: an injective or surjective map between equal-order groups is bijective.
        results["class collapse"].record(
            classes[ClassLabel.ML] == classes[ClassLabel.EL] and classes[ClassLabel.MU] == classes[ClassLabel.EU],
            f"monogeny and epigeny classes differ on {where}",
        )
        for ab, same in classes.items():
            if not same:
                continue
            results["maximality transfer"].record(
                (ab in ex.maximal_labels) == (ab in ey.maximal_labels), f"{ab} maximality differs on {where}"
            )
            for cd in ClassLabel:
                inside_x = ex.ideals[cd] <= ex.ideals[ab]
                inside_y = ey.ideals[cd] <= ey.ideals[ab]
                results["inclusion transfer"].record(inside_x == inside_y, f"I{cd} ⊆ I{ab} differs on {where}")
                if inside_x:
                    results["class propagation"].record(classes[cd], f"{ab} equal but {cd} differs on {where}")
                if ab in ex.maximal_labels:
                    results["coincidence transfer"].record(
                        (ex.ideals[cd] == ex.ideals[ab]) == (ey.ideals[cd] == ey.ideals[ab]),
                        f"I{cd} = I{ab} differs on {where}",
                    )
        if all(classes.values()):
            results["inclusion poset"].record(
                ideal_inclusions(ex) == ideal_inclusions(ey), f"inclusion posets differ on {where}"
            )
        results["isomorphism by classes"].record(
            all(classes.values()) == brute_force_iso([X], [Y], caps).verdict, f"classes and oracle disagree on {where}"
        )
        compositions = hom_count(X.B, Y.B) * hom_count(Y.B, X.B)
        if compositions > MAX_COMPOSITIONS:
            return
        for label in ClassLabel:
            witness = composite_witness(X, Y, label, caps)
            results["composite witness"].record(
                (witness is not None) == classes[label], f"{label} composite test disagrees on {where}"
            )
            if label not in ex.maximal_labels:
                continue
            endos = ey.endos
            if len(endos) * compositions > MAX_ASSOCIATED_WORK:
                endos = [endos[0], endos[ey.identity_index], endos[len(endos) // 2]]
                results["associated ideals"].exhaustive = False
            for m in endos:
                predicted = associated_ideal_formula(X, label, m, caps)
                actual = associated_ideal_membership(X, label, m, caps)
                results["associated ideals"].record(
                    predicted == actual,
                    f"{label} associated ideal of {X.describe()} misjudges {m.f} on {Y.describe()}",
                )

    try:
        for X, Y in _lemma_pairs(objects, options):
            pair_checks(X, Y)
        for X in objects:
            criteria = split_criteria(X, caps)
            results["split criteria"].record(criteria.agree, f"split tests disagree on {X.describe()}")
            if is_split(X, caps):
                whole = brute_force_iso([X], [X.lower_part(), X.upper_part()], caps)
                results["split decomposition"].record(
                    whole.verdict, f"{X.describe()} is not the sum of its lower and upper parts"
                )
                for label in ClassLabel:
                    part = X.lower_part() if label.b is EndTerm.LOWER else X.upper_part()
                    results["split decomposition"].record(
                        bool(same_class(X, part, label, caps)),
                        f"{label} class of {X.describe()} differs from its part",
                    )
                    results["split decomposition"].record(
                        not end_term(part, label).is_zero, f"{label} end term of the part of {X.describe()} is zero"
                    )
    except ModextError as exc:
        results["inclusion transfer"].record(False, f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - started
    for result in results.values():
        result.seconds = elapsed / len(results)
        logger.info(f"{result.name}: {result.checks} checks, {result.failed} failed")
    return list(results.values())


def lemma_objects(max_order: int, primes: Sequence[int], caps: Caps) -> list[ExtObject]:
    """Every object with nonzero uniserial end terms up to ``max_order``, isomorphic copies included."""
    return [X for B in candidate_groups(max_order, primes) for X in in_u_objects(B, caps)]


def run_selftest(options: SelftestOptions | None = None, caps: Caps | None = None) -> SelftestReport:
    """Run the whole suite.

    Raises:
        CapExceeded: If building a corpus exceeds a cap.
    """
    options = options or SelftestOptions()
    caps = Caps.resolve(caps)
    corpus = [entry.obj for entry in generate_corpus(options.max_order, options.primes, caps=caps) if entry.obj.in_u]
    small = [entry.obj for entry in generate_corpus(options.lemma_max_order, options.primes, caps=caps)]
    report = SelftestReport()
    report.results.append(check_endomorphism_rings(corpus, caps))
    report.results.append(check_oracle_agreement(small, options, caps))
    report.results.append(check_crossed_pair(caps))
    report.results.append(check_split_sums(caps))
    report.results.append(check_exchange_family(caps))
    report.results.append(check_digraphs(options.digraph_size, caps))
    lemma_corpus = lemma_objects(options.lemma_max_order, options.primes, caps)
    report.results.extend(check_class_lemmas(lemma_corpus, options, caps))
    logger.info(f"Selftest {'passed' if report.ok else 'failed'}")
    return report
