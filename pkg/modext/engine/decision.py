"""Deciding isomorphism of direct sums from class data.

Three deciders compare two lists of objects label by label. Each picks, per
label, the index sets to compare, partitions both sides together into
classes and asks for a class-preserving bijection, which exists exactly when
every class block holds as many left indices as right indices.

* ``decide_parziale`` compares, per label, the indices whose ideal for that
  label is maximal in the endomorphism ring.
* ``decide_completo`` compares all indices and needs equally long lists.
* ``decide_completo_prime`` also admits objects with a zero end term and
  compares, per end term, the indices where that end term is nonzero.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from attrs import define, field

from modext.data import ClassLabel, DecisionMethod
from modext.engine.caps import Caps
from modext.engine.classes import end_term, partition, predicate
from modext.engine.digraph import BipartiteDigraph
from modext.engine.endomorphisms import analyze
from modext.engine.extensions import DirectSum, ExtMorphism, ExtObject, compose_morphisms, invert
from modext.engine.oracle import brute_force_iso
from modext.exceptions import ScopeViolation

logger = logging.getLogger(__name__)

__all__ = [
    "DecisionReport",
    "LabelFailure",
    "applicable_methods",
    "decide",
    "decide_completo",
    "decide_completo_prime",
    "decide_parziale",
    "isomorphism_digraph",
]

Pairing = tuple[tuple[int, int], ...]


@define(frozen=True)
class LabelFailure:
    """Where a class-preserving bijection could not be built.

    Attributes:
        label: The failing label.
        left_block: Left indices of the offending class block (all compared left indices for a size mismatch).
        right_block: Right indices of the same block.
        reason: Human-readable explanation.
    """

    label: ClassLabel | None
    left_block: tuple[int, ...] = ()
    right_block: tuple[int, ...] = ()
    reason: str = ""


@define(frozen=True, eq=False)
class DecisionReport:
    """Outcome of a decision procedure; truthy iff the verdict is true.

    Attributes:
        verdict: Whether the direct sums are isomorphic.
        method: The procedure that produced the verdict.
        witnesses: Per label, the class-preserving bijection as ``(left, right)`` index pairs.
        failure: The first failing label and block, on a false verdict.
        index_sets: The index sets compared, keyed like ``"X_l"`` or ``"Y_ml"``.
        attempted: Per label, the index-order bijection tried where no class-preserving one exists.
        isomorphism: For the oracle, the explicit isomorphism of the sums.
    """

    verdict: bool
    method: DecisionMethod
    witnesses: dict[ClassLabel, Pairing] = field(factory=dict)
    failure: LabelFailure | None = None
    index_sets: dict[str, tuple[int, ...]] = field(factory=dict)
    attempted: dict[ClassLabel, Pairing] = field(factory=dict)
    isomorphism: ExtMorphism | None = None

    def __bool__(self):
        return self.verdict


def _match_label(
    left: Sequence[ExtObject],
    right: Sequence[ExtObject],
    xs: Sequence[int],
    ys: Sequence[int],
    label: ClassLabel,
    caps: Caps,
) -> tuple[Pairing | None, LabelFailure | None]:
    """Build a class-preserving bijection ``xs -> ys`` block by block, in index order."""
    if len(xs) != len(ys):
        return None, LabelFailure(
            label, tuple(xs), tuple(ys), f"{len(xs)} left indices against {len(ys)} right indices"
        )
    combined = [left[i] for i in xs] + [right[j] for j in ys]
    blocks = partition(combined, label, caps).blocks
    pairs: list[tuple[int, int]] = []
    for block in blocks:
        block_left = tuple(xs[k] for k in block if k < len(xs))
        block_right = tuple(ys[k - len(xs)] for k in block if k >= len(xs))
        if len(block_left) != len(block_right):
            return None, LabelFailure(
                label,
                block_left,
                block_right,
                f"class block holds {len(block_left)} left and {len(block_right)} right objects",
            )
        pairs.extend(zip(block_left, block_right))
    return tuple(sorted(pairs)), None


def _decide_per_label(
    left: Sequence[ExtObject],
    right: Sequence[ExtObject],
    index_sets: dict[ClassLabel, tuple[Sequence[int], Sequence[int]]],
    method: DecisionMethod,
    caps: Caps,
    recorded: dict[str, tuple[int, ...]],
) -> DecisionReport:
    witnesses: dict[ClassLabel, Pairing] = {}
    attempted: dict[ClassLabel, Pairing] = {}
    failure = None
    for label in ClassLabel:
        xs, ys = index_sets[label]
        pairs, problem = _match_label(left, right, xs, ys, label, caps)
        if pairs is not None:
            witnesses[label] = pairs
            continue
        if len(xs) == len(ys):
            attempted[label] = tuple(zip(xs, ys))
        failure = failure or problem
    verdict = failure is None
    logger.debug(f"{method}: verdict {verdict} on {len(left)} against {len(right)} objects")
    return DecisionReport(
        verdict=verdict,
        method=method,
        witnesses=witnesses if verdict else {},
        failure=failure,
        index_sets=recorded,
        attempted=attempted,
    )


def _require_u(objects: Sequence[ExtObject], side: str) -> None:
    for i, X in enumerate(objects):
        if not X.in_u:
            raise ScopeViolation(f"{side} object {i} {X.describe()} does not have nonzero uniserial end terms")


def decide_parziale(
    left: Sequence[ExtObject], right: Sequence[ExtObject], caps: Caps | None = None
) -> DecisionReport:
    """Decide isomorphism by comparing, per label, the objects whose ideal for it is maximal.

    Raises:
        ScopeViolation: If an object is outside the uniserial category.
        CapExceeded: If an enumeration exceeds a cap.
    """
    caps = Caps.resolve(caps)
    _require_u(left, "Left")
    _require_u(right, "Right")
    left_max = [analyze(X, caps).maximal_labels for X in left]
    right_max = [analyze(Y, caps).maximal_labels for Y in right]
    index_sets = {
        label: (
            [i for i, labels in enumerate(left_max) if label in labels],
            [j for j, labels in enumerate(right_max) if label in labels],
        )
        for label in ClassLabel
    }
    recorded = {}
    for label, (xs, ys) in index_sets.items():
        recorded[f"X_{label.key}"] = tuple(xs)
        recorded[f"Y_{label.key}"] = tuple(ys)
    return _decide_per_label(left, right, index_sets, DecisionMethod.PARZIALE, caps, recorded)


def decide_completo(
    left: Sequence[ExtObject], right: Sequence[ExtObject], caps: Caps | None = None
) -> DecisionReport:
    """Decide isomorphism by four class-preserving permutations of all indices.

    Raises:
        ScopeViolation: If an object is outside the uniserial category.
        CapExceeded: If an enumeration exceeds a cap.
    """
    caps = Caps.resolve(caps)
    _require_u(left, "Left")
    _require_u(right, "Right")
    if len(left) != len(right):
        return DecisionReport(
            verdict=False,
            method=DecisionMethod.COMPLETO,
            failure=LabelFailure(None, reason=f"{len(left)} summands against {len(right)}"),
        )
    everything = list(range(len(left)))
    index_sets = {label: (everything, everything) for label in ClassLabel}
    return _decide_per_label(left, right, index_sets, DecisionMethod.COMPLETO, caps, {})


def decide_completo_prime(
    left: Sequence[ExtObject], right: Sequence[ExtObject], caps: Caps | None = None
) -> DecisionReport:
    """Decide isomorphism of lists that may contain objects with a zero end term.

    Lower labels compare the indices with nonzero ``A``, upper labels those
    with nonzero ``C``; the lists may have different lengths.

    Raises:
        ScopeViolation: If an object is zero or has an end term that is neither zero nor uniserial.
        CapExceeded: If an enumeration exceeds a cap.
    """
    caps = Caps.resolve(caps)
    for side, objects in (("Left", left), ("Right", right)):
        for i, X in enumerate(objects):
            if X.is_zero:
                raise ScopeViolation(f"{side} object {i} is the zero object")
            if not X.in_scope:
                raise ScopeViolation(f"{side} object {i} {X.describe()} has a non-uniserial end term")

    def nonzero(objects: Sequence[ExtObject], label: ClassLabel) -> list[int]:
        return [i for i, X in enumerate(objects) if not end_term(X, label).is_zero]

    index_sets = {label: (nonzero(left, label), nonzero(right, label)) for label in ClassLabel}
    recorded = {
        "X_l": tuple(index_sets[ClassLabel.ML][0]),
        "X_u": tuple(index_sets[ClassLabel.MU][0]),
        "X'_l": tuple(index_sets[ClassLabel.ML][1]),
        "X'_u": tuple(index_sets[ClassLabel.MU][1]),
    }
    return _decide_per_label(left, right, index_sets, DecisionMethod.COMPLETO_PRIME, caps, recorded)


def _decide_brute_force(
    left: Sequence[ExtObject], right: Sequence[ExtObject], caps: Caps | None = None
) -> DecisionReport:
    result = brute_force_iso(left, right, caps)
    failure = None if result else LabelFailure(None, reason=result.reason)
    return DecisionReport(
        verdict=result.verdict,
        method=DecisionMethod.BRUTE_FORCE,
        failure=failure,
        isomorphism=result.isomorphism,
    )


DECIDERS = {
    DecisionMethod.PARZIALE: decide_parziale,
    DecisionMethod.COMPLETO: decide_completo,
    DecisionMethod.COMPLETO_PRIME: decide_completo_prime,
    DecisionMethod.BRUTE_FORCE: _decide_brute_force,
}


def decide(
    method: DecisionMethod, left: Sequence[ExtObject], right: Sequence[ExtObject], caps: Caps | None = None
) -> DecisionReport:
    """Run the named decision procedure."""
    return DECIDERS[DecisionMethod(method)](left, right, caps)


def applicable_methods(left: Sequence[ExtObject], right: Sequence[ExtObject]) -> list[DecisionMethod]:
    """The deciders whose preconditions hold on both lists, oracle last."""
    objects = [*left, *right]
    methods = []
    if all(X.in_u for X in objects):
        methods.extend([DecisionMethod.PARZIALE, DecisionMethod.COMPLETO])
    if all(X.in_scope and not X.is_zero for X in objects):
        methods.append(DecisionMethod.COMPLETO_PRIME)
    methods.append(DecisionMethod.BRUTE_FORCE)
    return methods


def isomorphism_digraph(
    left_sum: DirectSum, right_sum: DirectSum, iso: ExtMorphism, label: ClassLabel
) -> BipartiteDigraph:
    """The digraph of an explicit isomorphism ``⊕ left -> ⊕ right`` for one label.

    Vertex ``x{h}`` stands for the ``h``-th left summand and ``y{k}`` for the
    ``k``-th right summand (both 1-based), restricted to summands whose end
    term for ``label`` is nonzero. There is an edge ``x{h} -> y{k}`` when the
    component ``π'_k ∘ iso ∘ ε_h`` satisfies the predicate of ``label``, and an
    edge ``y{k} -> x{h}`` when ``π_h ∘ iso⁻¹ ∘ ε'_k`` does.
    """
    back = invert(iso)
    xs = [h for h, X in enumerate(left_sum.summands) if not end_term(X, label).is_zero]
    ys = [k for k, Y in enumerate(right_sum.summands) if not end_term(Y, label).is_zero]
    edges = []
    for h in xs:
        through = compose_morphisms(iso, left_sum.injections[h])
        for k in ys:
            if predicate(compose_morphisms(right_sum.projections[k], through), label):
                edges.append((f"x{h + 1}", f"y{k + 1}"))
    for k in ys:
        through = compose_morphisms(back, right_sum.injections[k])
        for h in xs:
            if predicate(compose_morphisms(left_sum.projections[h], through), label):
                edges.append((f"y{k + 1}", f"x{h + 1}"))
    return BipartiteDigraph([f"x{h + 1}" for h in xs], [f"y{k + 1}" for k in ys], edges)
