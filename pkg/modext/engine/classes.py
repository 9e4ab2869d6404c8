"""The four (a, b)-class predicates and class comparisons.

A morphism ``f: X -> Y`` satisfies the predicate of a label when:

* (m,l): ``ker f ∩ A = 0``, i.e. the restriction ``A -> A'`` is injective;
* (e,l): ``f(A) = A'``, i.e. the restriction ``A -> A'`` is surjective;
* (m,u): ``f⁻¹(A') = A``, i.e. the induced ``C -> C'`` is injective;
* (e,u): ``f(B) + A' = B'``, i.e. the induced ``C -> C'`` is surjective.

Two objects have the same (a, b)-class when there are morphisms in both
directions satisfying the predicate.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from functools import lru_cache

from attrs import define

from modext.data import ClassLabel, EndTerm
from modext.engine.caps import Caps
from modext.engine.extensions import ExtMorphism, ExtObject, compose_morphisms, is_split, morphisms
from modext.engine.groups import Group, is_injective, is_surjective
from modext.exceptions import NonTransitive, ScopeViolation

logger = logging.getLogger(__name__)

__all__ = [
    "ClassComparison",
    "ClassPartition",
    "SplitCriteria",
    "composite_witness",
    "end_term",
    "iso_via_classes",
    "partition",
    "predicate",
    "same_class",
    "split_criteria",
]


def predicate(m: ExtMorphism, label: ClassLabel) -> bool:
    """Whether ``m`` satisfies the predicate of ``label`` (see the module docstring)."""
    if label is ClassLabel.ML:
        return is_injective(m.lower)
    if label is ClassLabel.EL:
        return is_surjective(m.lower)
    if label is ClassLabel.MU:
        return is_injective(m.upper)
    return is_surjective(m.upper)


def end_term(X: ExtObject, label: ClassLabel) -> Group:
    """The end term ``label`` looks at: ``A`` for lower labels, ``C`` for upper ones."""
    return X.a_type if label.b is EndTerm.LOWER else X.c_type


@define(frozen=True)
class ClassComparison:
    """Outcome of a class comparison; truthy iff the classes agree.

    Attributes:
        label: The compared label.
        same: Whether the classes agree.
        forward: A morphism ``X -> Y`` satisfying the predicate, when found.
        backward: A morphism ``Y -> X`` satisfying the predicate, when found.
    """

    label: ClassLabel
    same: bool
    forward: ExtMorphism | None = None
    backward: ExtMorphism | None = None

    def __bool__(self):
        return self.same


def _witness(X: ExtObject, Y: ExtObject, label: ClassLabel, caps: Caps) -> ExtMorphism | None:
    for m in morphisms(X, Y, caps):
        if predicate(m, label):
            return m
    return None


@lru_cache(maxsize=8192)
def _same_class(X: ExtObject, Y: ExtObject, label: ClassLabel, caps: Caps) -> ClassComparison:
    if X == Y:
        identity = ExtMorphism.identity(X)
        return ClassComparison(label, True, identity, identity)
    # Mutual injections or mutual surjections force equal cardinalities.
    if end_term(X, label).order != end_term(Y, label).order:
        return ClassComparison(label, False)
    forward = _witness(X, Y, label, caps)
    if forward is None:
        return ClassComparison(label, False)
    backward = _witness(Y, X, label, caps)
    if backward is None:
        return ClassComparison(label, False, forward=forward)
    return ClassComparison(label, True, forward, backward)


def same_class(X: ExtObject, Y: ExtObject, label: ClassLabel, caps: Caps | None = None) -> ClassComparison:
    """Compare the ``label``-classes of two objects.

    Args:
        X: First object.
        Y: Second object.
        label: The class label.
        caps: Optional cap override.

    Returns:
        ClassComparison: Truthy iff the classes agree, with witnesses in both directions.

    Raises:
        CapExceeded: If a morphism enumeration exceeds a cap.
    """
    return _same_class(X, Y, label, Caps.resolve(caps))


def composite_witness(
    X: ExtObject, Y: ExtObject, label: ClassLabel, caps: Caps | None = None
) -> tuple[ExtMorphism, ExtMorphism] | None:
    """Find ``f: X -> Y`` and ``g: Y -> X`` with ``g ∘ f`` outside the ``label`` ideal of ``X``.

    For objects with uniserial end terms such a pair exists exactly when the
    ``label``-classes agree, which makes this an independent second test.
    """
    caps = Caps.resolve(caps)
    backs = list(morphisms(Y, X, caps))
    for f in morphisms(X, Y, caps):
        for g in backs:
            if predicate(compose_morphisms(g, f), label):
                return f, g
    return None


def iso_via_classes(X: ExtObject, Y: ExtObject, caps: Caps | None = None) -> bool:
    """Decide isomorphism of two objects with nonzero uniserial end terms by their four classes.

    Raises:
        ScopeViolation: If either object has a zero or non-uniserial end term.
        CapExceeded: If a morphism enumeration exceeds a cap.
    """
    if not (X.in_u and Y.in_u):
        raise ScopeViolation("Class-based isomorphism needs both end terms nonzero and uniserial")
    return all(same_class(X, Y, label, caps) for label in ClassLabel)


@define(frozen=True)
class ClassPartition:
    """Equivalence classes of a list of objects under one label.

    Attributes:
        label: The label partitioned by.
        blocks: Index blocks, each sorted, ordered by their smallest index.
        excluded: Indices whose relevant end term is zero.
    """

    label: ClassLabel
    blocks: tuple[tuple[int, ...], ...]
    excluded: tuple[int, ...] = ()

    def block_of(self, index: int) -> tuple[int, ...] | None:
        for block in self.blocks:
            if index in block:
                return block
        return None


def partition(objects: Sequence[ExtObject], label: ClassLabel, caps: Caps | None = None) -> ClassPartition:
    """Partition ``objects`` by their ``label``-class.

    Indices whose relevant end term is zero are left out of every block. The
    whole pairwise relation is computed and checked against the blocks.

    Raises:
        NonTransitive: If the pairwise relation is not an equivalence.
        CapExceeded: If a morphism enumeration exceeds a cap.
    """
    caps = Caps.resolve(caps)
    included = [i for i, X in enumerate(objects) if not end_term(X, label).is_zero]
    excluded = tuple(sorted(set(range(len(objects))) - set(included)))

    blocks: list[list[int]] = []
    for i in included:
        for block in blocks:
            if same_class(objects[block[0]], objects[i], label, caps):
                block.append(i)
                break
        else:
            blocks.append([i])

    where = {i: number for number, block in enumerate(blocks) for i in block}
    for i, j in itertools.combinations(included, 2):
        related = bool(same_class(objects[i], objects[j], label, caps))
        if related != (where[i] == where[j]):
            raise NonTransitive(f"{label} class equality is not transitive on indices {i} and {j}")
    logger.debug(f"{label} partition of {len(objects)} objects: {blocks}")
    return ClassPartition(label, tuple(tuple(block) for block in blocks), excluded)


@define(frozen=True)
class SplitCriteria:
    """Three independent tests of whether an extension splits.

    Attributes:
        retraction: Some ``r: B -> A`` restricts to the identity on ``A``.
        lower: The lower classes agree with those of ``0 -> A -> A -> 0 -> 0``.
        upper: The upper classes agree with those of ``0 -> 0 -> C -> C -> 0``.
    """

    retraction: bool
    lower: bool
    upper: bool

    @property
    def agree(self) -> bool:
        return self.retraction == self.lower == self.upper


def split_criteria(X: ExtObject, caps: Caps | None = None) -> SplitCriteria:
    """Run the three split tests on an object with nonzero uniserial end terms.

    Raises:
        ScopeViolation: If an end term of ``X`` is zero or not uniserial.
    """
    if not X.in_u:
        raise ScopeViolation("Split criteria compare against both end terms, which must be nonzero uniserial")
    lower, upper = X.lower_part(), X.upper_part()
    return SplitCriteria(
        retraction=is_split(X, caps),
        lower=all(same_class(X, lower, label, caps) for label in (ClassLabel.ML, ClassLabel.EL)),
        upper=all(same_class(X, upper, label, caps) for label in (ClassLabel.MU, ClassLabel.EU)),
    )
