"""The endomorphism ring of an extension and its four ideals.

For an object with nonzero uniserial end terms the endomorphisms failing
each class predicate form a two-sided completely prime ideal, every
non-automorphism lies in one of them, and the ring modulo the intersection
of the maximal ones is a product of division rings. ``analyze`` computes
all of this by enumeration and checks each law on the concrete ring.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections.abc import Callable, Iterable, Sequence
from functools import lru_cache

from attrs import define, field

from modext.data import ClassLabel
from modext.engine.caps import Caps
from modext.engine.classes import predicate, same_class
from modext.engine.extensions import ExtMorphism, ExtObject, compose_morphisms, is_iso_in_E, morphisms
from modext.engine.groups import Group, enumerate_homs, is_injective, is_surjective, is_uniserial
from modext.exceptions import ScopeViolation, TheoremViolation

logger = logging.getLogger(__name__)

__all__ = [
    "CrtCheck",
    "EndoRingAnalysis",
    "analyze",
    "associated_ideal_formula",
    "associated_ideal_membership",
    "crt_check",
    "ideal_inclusions",
    "module_type",
    "type_bound_check",
    "verify_crt",
]

# Seed for the sampled pair checks, so sampled runs are reproducible.
PAIR_SAMPLE_SEED = 20240101

Matrix = tuple[tuple[int, ...], ...]


class _EndoRing:
    """Index arithmetic on a finite list of endomorphisms closed under + and ∘."""

    def __init__(self, endos: Sequence[ExtMorphism]):
        self.matrices = [m.f.matrix for m in endos]
        self.moduli = endos[0].f.codomain.factors if endos else ()
        self.position = {matrix: i for i, matrix in enumerate(self.matrices)}

    def _lookup(self, matrix: Matrix) -> int:
        try:
            return self.position[matrix]
        except KeyError as exc:
            raise TheoremViolation("Endomorphisms are not closed under the ring operations") from exc

    def mul(self, i: int, j: int) -> int:
        """Index of ``endos[i] ∘ endos[j]``."""
        g, f, moduli = self.matrices[i], self.matrices[j], self.moduli
        n = len(moduli)
        return self._lookup(
            tuple(tuple(sum(g[r][k] * f[k][c] for k in range(n)) % moduli[r] for c in range(n)) for r in range(n))
        )

    def add(self, i: int, j: int) -> int:
        f, g = self.matrices[i], self.matrices[j]
        return self._lookup(
            tuple(tuple((a + b) % e for a, b in zip(row_f, row_g)) for row_f, row_g, e in zip(f, g, self.moduli))
        )

    def sub(self, i: int, j: int) -> int:
        f, g = self.matrices[i], self.matrices[j]
        return self._lookup(
            tuple(tuple((a - b) % e for a, b in zip(row_f, row_g)) for row_f, row_g, e in zip(f, g, self.moduli))
        )


def _pairs(
    left: Sequence[int], right: Sequence[int], budget: int, rng: random.Random
) -> tuple[Iterable[tuple[int, int]], bool]:
    if len(left) * len(right) <= budget:
        return itertools.product(left, right), True
    return ((rng.choice(left), rng.choice(right)) for _ in range(budget)), False


@define(frozen=True, eq=False)
class EndoRingAnalysis:
    """The endomorphism ring of an object together with its four ideals.

    Ideals and the radical are sets of indices into ``endos``.

    Attributes:
        obj: The analyzed object.
        endos: Every endomorphism of ``obj``.
        ideals: For each label, the endomorphisms failing its predicate.
        maximal_labels: Labels whose ideal is maximal among the four.
        radical: Intersection of the maximal ideals.
        type_count: Number of distinct maximal ideals.
        automorphisms: Endomorphisms that are isomorphisms of extensions.
        identity_index: Position of the identity in ``endos``.
        exhaustive: False if some law was checked on a sample of pairs only.
        violations: Descriptions of every failed law (empty on success).
    """

    obj: ExtObject
    endos: tuple[ExtMorphism, ...]
    ideals: dict[ClassLabel, frozenset[int]]
    maximal_labels: frozenset[ClassLabel]
    radical: frozenset[int]
    type_count: int
    automorphisms: frozenset[int]
    identity_index: int
    exhaustive: bool = True
    violations: tuple[str, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.endos)

    def ideal_sizes(self) -> dict[ClassLabel, int]:
        return {label: len(ideal) for label, ideal in self.ideals.items()}

    def maximal_ideals(self) -> list[frozenset[int]]:
        """Distinct maximal ideals, in label order."""
        out: list[frozenset[int]] = []
        for label in ClassLabel:
            ideal = self.ideals[label]
            if label in self.maximal_labels and ideal not in out:
                out.append(ideal)
        return out

    def index_of(self, m: ExtMorphism) -> int:
        for i, endo in enumerate(self.endos):
            if endo.f == m.f:
                return i
        raise ValueError("Not an endomorphism of the analyzed object")


def _check_ideal(
    ring: _EndoRing,
    label: ClassLabel,
    ideal: frozenset[int],
    size: int,
    budget: int,
    rng: random.Random,
) -> tuple[list[str], bool]:
    everything = list(range(size))
    members = sorted(ideal)
    outside = sorted(set(everything) - ideal)
    laws: list[tuple[str, Sequence[int], Sequence[int], Callable[[int, int], bool]]] = [
        ("closed under addition", members, members, lambda i, j: ring.add(i, j) in ideal),
        ("closed under left composition", everything, members, lambda g, f: ring.mul(g, f) in ideal),
        ("closed under right composition", members, everything, lambda f, g: ring.mul(f, g) in ideal),
        ("completely prime", outside, outside, lambda f, g: ring.mul(f, g) not in ideal),
    ]
    problems = []
    exhaustive = True
    for name, left, right, holds in laws:
        pairs, complete = _pairs(left, right, budget, rng)
        exhaustive = exhaustive and complete
        bad = next(((i, j) for i, j in pairs if not holds(i, j)), None)
        if bad is not None:
            problems.append(f"I{label} is not {name} (endomorphisms {bad[0]}, {bad[1]})")
    return problems, exhaustive


@lru_cache(maxsize=1024)
def _analyze(X: ExtObject, caps: Caps) -> EndoRingAnalysis:
    endos = tuple(morphisms(X, X, caps))
    ring = _EndoRing(endos)
    identity_index = ring.position[ExtMorphism.identity(X).f.matrix]
    ideals = {
        label: frozenset(i for i, m in enumerate(endos) if not predicate(m, label)) for label in ClassLabel
    }
    automorphisms = frozenset(i for i, m in enumerate(endos) if is_iso_in_E(m))

    violations: list[str] = []
    exhaustive = True
    rng = random.Random(PAIR_SAMPLE_SEED)
    for label, ideal in ideals.items():
        if identity_index in ideal:
            violations.append(f"I{label} contains the identity")
        problems, complete = _check_ideal(ring, label, ideal, len(endos), caps.max_pair_checks, rng)
        violations.extend(problems)
        exhaustive = exhaustive and complete
    if not exhaustive:
        logger.warning(
            f"Ideal laws of {X.describe()} checked on {caps.max_pair_checks} sampled pairs "
            f"per law ({len(endos)} endomorphisms)"
        )

    non_automorphisms = frozenset(range(len(endos))) - automorphisms
    if frozenset().union(*ideals.values()) != non_automorphisms:
        violations.append("The four ideals do not cover exactly the non-automorphisms")

    distinct = set(ideals.values())
    maximal_labels = frozenset(
        label for label, ideal in ideals.items() if not any(ideal < other for other in distinct)
    )
    outside_union = frozenset(
        label
        for label, ideal in ideals.items()
        if not ideal <= frozenset().union(*(other for other in distinct if other != ideal))
    )
    if maximal_labels != outside_union:
        violations.append(
            f"Inclusion-maximal labels {sorted(map(str, maximal_labels))} differ from "
            f"union-criterion labels {sorted(map(str, outside_union))}"
        )
    maximal = {ideals[label] for label in maximal_labels}
    type_count = len(maximal)
    if not 1 <= type_count <= 4:
        violations.append(f"Type {type_count} is outside 1..4")
    radical = frozenset.intersection(*maximal) if maximal else frozenset()

    sizes = [len(ideal) for ideal in ideals.values()]
    logger.debug(f"{X.describe()}: |E| = {len(endos)}, type {type_count}, ideal sizes {sizes}")
    return EndoRingAnalysis(
        obj=X,
        endos=endos,
        ideals=ideals,
        maximal_labels=maximal_labels,
        radical=radical,
        type_count=type_count,
        automorphisms=automorphisms,
        identity_index=identity_index,
        exhaustive=exhaustive,
        violations=tuple(violations),
    )


def analyze(X: ExtObject, caps: Caps | None = None, strict: bool = True) -> EndoRingAnalysis:
    """Enumerate the endomorphism ring of ``X`` and check its ideal structure.

    Checked on the concrete ring: each ideal is proper, closed under addition
    and under composition with any endomorphism on either side, and completely
    prime; the union of the ideals is the set of non-automorphisms; the
    inclusion-maximal labels coincide with the labels whose ideal is not
    contained in the union of the other distinct ideals.

    Args:
        X: An object with nonzero uniserial end terms.
        caps: Optional cap override.
        strict: Raise on the first failed law instead of recording it.

    Returns:
        EndoRingAnalysis: The ring, its ideals and maximality data.

    Raises:
        ScopeViolation: If an end term of ``X`` is zero or not uniserial.
        TheoremViolation: If ``strict`` and a law fails.
        CapExceeded: If the endomorphism enumeration exceeds a cap.
    """
    if not X.in_u:
        raise ScopeViolation(f"{X.describe()} does not have nonzero uniserial end terms")
    analysis = _analyze(X, Caps.resolve(caps))
    if strict and analysis.violations:
        raise TheoremViolation(f"{X.describe()}: " + "; ".join(analysis.violations))
    return analysis


@define(frozen=True)
class CrtCheck:
    """Sizes behind the product decomposition of ``E / J``.

    Attributes:
        quotient_sizes: ``|E / I|`` for each distinct maximal ideal, in label order.
        radical_quotient_size: ``|E / J|``.
        division_rings: Every ``E / I`` has two-sided inverses for its nonzero cosets.
    """

    quotient_sizes: tuple[int, ...]
    radical_quotient_size: int
    division_rings: bool

    @property
    def holds(self) -> bool:
        return self.division_rings and self.radical_quotient_size == math.prod(self.quotient_sizes)


def _coset_representatives(ring: _EndoRing, ideal: frozenset[int], size: int) -> list[int]:
    reps: list[int] = []
    for f in range(size):
        if not any(ring.sub(f, r) in ideal for r in reps):
            reps.append(f)
    return reps


def crt_check(analysis: EndoRingAnalysis) -> CrtCheck:
    """Compute the coset data of ``E`` modulo each maximal ideal and modulo the radical."""
    ring = _EndoRing(analysis.endos)
    one = analysis.identity_index
    size = analysis.size
    quotient_sizes = []
    division_rings = True
    for ideal in analysis.maximal_ideals():
        reps = _coset_representatives(ring, ideal, size)
        if len(reps) * len(ideal) != size:
            division_rings = False
        quotient_sizes.append(len(reps))
        for f in reps:
            if f in ideal:
                continue
            inverse = next(
                (
                    g
                    for g in reps
                    if ring.sub(ring.mul(f, g), one) in ideal and ring.sub(ring.mul(g, f), one) in ideal
                ),
                None,
            )
            if inverse is None:
                logger.info(f"Coset of endomorphism {f} has no inverse modulo a maximal ideal")
                division_rings = False
    radical_reps = _coset_representatives(ring, analysis.radical, size)
    return CrtCheck(tuple(quotient_sizes), len(radical_reps), division_rings)


def verify_crt(analysis: EndoRingAnalysis) -> bool:
    """Check that ``E / J`` is the product of the division rings ``E / I`` over the maximal ideals."""
    return crt_check(analysis).holds


@lru_cache(maxsize=256)
def _module_type(G: Group, caps: Caps) -> int:
    endos = list(enumerate_homs(G, G, caps))
    ideals = {
        frozenset(i for i, h in enumerate(endos) if not is_injective(h)),
        frozenset(i for i, h in enumerate(endos) if not is_surjective(h)),
    }
    return sum(1 for ideal in ideals if not any(ideal < other for other in ideals))


def module_type(G: Group, caps: Caps | None = None) -> int:
    """Type of the endomorphism ring of a uniserial-or-zero group.

    The zero ring has type 0. For a cyclic group of prime-power order the
    non-injective and non-surjective endomorphisms coincide, so the type is 1.

    Raises:
        ScopeViolation: If ``G`` is neither zero nor uniserial.
    """
    if G.is_zero:
        return 0
    if not is_uniserial(G):
        raise ScopeViolation(f"{G} is not uniserial")
    return _module_type(G, Caps.resolve(caps))


def type_bound_check(X: ExtObject, caps: Caps | None = None) -> bool:
    """Check ``type(E) <= type(End A) + type(End C)``."""
    analysis = analyze(X, caps)
    return analysis.type_count <= module_type(X.a_type, caps) + module_type(X.c_type, caps)


def associated_ideal_membership(
    base: ExtObject, label: ClassLabel, m: ExtMorphism, caps: Caps | None = None
) -> bool:
    """Whether ``m`` lies in the ideal of the category associated to ``I_{base,label}``.

    That is: for every ``alpha: base -> m.source`` and ``beta: m.target -> base``,
    ``beta ∘ m ∘ alpha`` fails the predicate of ``label``.

    Raises:
        CapExceeded: If a morphism enumeration exceeds a cap.
    """
    caps = Caps.resolve(caps)
    betas = list(morphisms(m.target, base, caps))
    for alpha in morphisms(base, m.source, caps):
        through = compose_morphisms(m, alpha)
        for beta in betas:
            if predicate(compose_morphisms(beta, through), label):
                return False
    return True


def associated_ideal_formula(
    base: ExtObject, label: ClassLabel, m: ExtMorphism, caps: Caps | None = None
) -> bool | None:
    """Predict associated-ideal membership of an endomorphism from class data.

    When ``I_{base,label}`` is maximal and ``m`` is an endomorphism of ``Y``:
    if ``Y`` and ``base`` have different ``label``-classes every endomorphism of
    ``Y`` is a member, otherwise the members are exactly ``I_{Y,label}``.

    Returns:
        bool | None: The prediction, or None when the formula does not apply.
    """
    if m.source != m.target or not m.source.in_u:
        return None
    if label not in analyze(base, caps).maximal_labels:
        return None
    if not same_class(base, m.source, label, caps):
        return True
    return not predicate(m, label)


def ideal_inclusions(analysis: EndoRingAnalysis) -> dict[tuple[ClassLabel, ClassLabel], bool]:
    """For each ordered pair of labels ``(c, a)``, whether ``I_c ⊆ I_a``."""
    return {
        (small, big): analysis.ideals[small] <= analysis.ideals[big]
        for small in ClassLabel
        for big in ClassLabel
    }
