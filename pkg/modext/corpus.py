"""Deterministic corpora of in-scope objects.

An object ``0 -> A -> B -> C -> 0`` whose end terms are each zero or cyclic of
prime-power order has a middle group with at most two canonical factors, so
the corpus walks those groups. On every group it collects the cyclic
prime-power subgroups ``A`` with a uniserial quotient and, when the group
itself is uniserial, the two objects with a zero end term. One object is kept
per isomorphism class (checked with the brute-force oracle).
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator, Sequence

from attrs import define
from sympy import isprime

from modext.engine.caps import Caps
from modext.engine.extensions import ExtObject, make_ext
from modext.engine.groups import Group, canonicalize, is_uniserial, subgroup_generated
from modext.engine.oracle import brute_force_iso
from modext.exceptions import ScopeViolation

logger = logging.getLogger(__name__)

__all__ = [
    "CorpusEntry",
    "candidate_groups",
    "degenerate_objects",
    "generate_corpus",
    "in_scope_objects",
    "in_u_objects",
]


@define(frozen=True)
class CorpusEntry:
    """A named corpus object."""

    name: str
    obj: ExtObject


def _prime_powers(p: int, bound: int) -> list[int]:
    out, q = [], p
    while q <= bound:
        out.append(q)
        q *= p
    return out


def candidate_groups(max_order: int, primes: Sequence[int]) -> list[Group]:
    """Canonical groups with at most two factors, order at most ``max_order``, over ``primes``.

    Ordered by group order, then by canonical factors.

    Examples:
        >>> [g.factors for g in candidate_groups(6, [2, 3])]
        [(2,), (3,), (2, 2), (4,), (2, 3)]
    """
    powers = sorted({q for p in primes for q in _prime_powers(p, max_order)})
    groups = {canonicalize([q]) for q in powers}
    for i, q in enumerate(powers):
        for r in powers[i:]:
            if q * r <= max_order:
                groups.add(canonicalize([q, r]))
    return sorted(groups, key=lambda G: (G.order, G.factors))


def in_u_objects(B: Group, caps: Caps | None = None) -> Iterator[ExtObject]:
    """Every object on ``B`` with nonzero uniserial end terms, one per lower subgroup."""
    seen: set[frozenset] = set()
    for g in B.elements(caps):
        if g == B.zero or len(canonicalize([B.element_order(g)]).factors) != 1:
            continue
        A = subgroup_generated(B, [g], caps)
        if A.elements in seen or A.order == B.order:
            continue
        seen.add(A.elements)
        try:
            X = make_ext(B, [g], caps)
        except ScopeViolation:
            continue
        if X.in_u:
            yield X


def degenerate_objects(B: Group, caps: Caps | None = None) -> Iterator[ExtObject]:
    """The objects on a uniserial ``B`` with a zero end term: ``A = 0`` first, then ``C = 0``.

    Nothing is yielded when ``B`` is not uniserial.

    Examples:
        >>> [(X.in_u0, X.in_u_upper0) for X in degenerate_objects(Group((4,)))]
        [(True, False), (False, True)]
    """
    if not is_uniserial(B):
        return
    yield make_ext(B, [], caps)
    yield make_ext(B, [B.unit(0)], caps)


def in_scope_objects(B: Group, caps: Caps | None = None) -> Iterator[ExtObject]:
    """Every nonzero in-scope object on ``B``, one per lower subgroup."""
    yield from in_u_objects(B, caps)
    yield from degenerate_objects(B, caps)


def _dedupe(objects: Iterable[ExtObject], caps: Caps | None) -> list[ExtObject]:
    kept: list[ExtObject] = []
    for X in objects:
        if not any(brute_force_iso([Y], [X], caps) for Y in kept):
            kept.append(X)
    return kept


def _size(G: Group) -> int:
    return 0 if G.is_zero else G.order


def _name(X: ExtObject, ordinal: int) -> str:
    middle = "x".join(str(q) for q in X.B.factors)
    return f"B{middle}_A{_size(X.a_type)}_C{_size(X.c_type)}_{ordinal}"


def generate_corpus(
    max_order: int,
    primes: Sequence[int] = (2, 3),
    seed: int = 0,
    sample: int | None = None,
    caps: Caps | None = None,
) -> list[CorpusEntry]:
    """Build the corpus of nonzero in-scope objects up to isomorphism.

    Objects on a uniserial middle group with a zero end term are included;
    their names carry ``A0`` or ``C0``, for example ``B4_A0_C4_1``.

    Args:
        max_order: Largest middle-group order.
        primes: Primes allowed to divide the middle-group order.
        seed: Seed for sampling.
        sample: Keep only this many objects, chosen with ``random.Random(seed)``
            and listed in corpus order.
        caps: Optional cap override.

    Returns:
        list[CorpusEntry]: Named objects ordered by middle group, then by the orders of the end terms.

    Raises:
        ValueError: If a listed number is not prime.
        CapExceeded: If a middle group exceeds the element cap.
    """
    for p in primes:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
    entries: list[CorpusEntry] = []
    for B in candidate_groups(max_order, primes):
        by_terms: dict[tuple[int, int], list[ExtObject]] = {}
        for X in in_scope_objects(B, caps):
            by_terms.setdefault((_size(X.a_type), _size(X.c_type)), []).append(X)
        for key in sorted(by_terms):
            for ordinal, X in enumerate(_dedupe(by_terms[key], caps), start=1):
                entries.append(CorpusEntry(_name(X, ordinal), X))
        logger.debug(f"Corpus: {B} done, {len(entries)} objects so far")
    logger.info(f"Corpus with |B| <= {max_order} over primes {list(primes)}: {len(entries)} objects")
    if sample is not None and sample < len(entries):
        chosen = sorted(random.Random(seed).sample(range(len(entries)), sample))
        entries = [entries[i] for i in chosen]
    return entries
