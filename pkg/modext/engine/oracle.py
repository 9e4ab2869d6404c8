"""Brute-force isomorphism oracle for direct sums of extensions.

Decides whether ``⊕ left`` and ``⊕ right`` are isomorphic in the category of
extensions by searching for a group isomorphism ``f`` of the middle groups
with ``f(A) = A'``. The search runs one prime at a time: the generators of the
lower term's primary part are placed first, with images in the target lower
term, and the remaining generators follow. Candidate images must have the
generator's order, and a partial map is abandoned as soon as it is not well
defined or not injective on the span built so far.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from attrs import define

from modext.engine.caps import Caps
from modext.engine.extensions import DirectSum, ExtMorphism, ExtObject, aggregate_caps, direct_sum, is_iso_in_E
from modext.engine.groups import Element, Group, Hom, decompose, multiples, prime_power
from modext.exceptions import CapExceeded, TheoremViolation

logger = logging.getLogger(__name__)

__all__ = ["OracleResult", "brute_force_iso"]


@define(frozen=True, eq=False)
class OracleResult:
    """Outcome of the oracle; truthy iff the sums are isomorphic.

    Attributes:
        verdict: Whether an isomorphism exists.
        isomorphism: An explicit isomorphism ``left_sum.obj -> right_sum.obj``, on success.
        nodes: Number of candidate images tried.
        left_sum: The direct sum of the left list.
        right_sum: The direct sum of the right list.
        reason: Why the search stopped early, if it did.
    """

    verdict: bool
    isomorphism: ExtMorphism | None
    nodes: int
    left_sum: DirectSum
    right_sum: DirectSum
    reason: str = ""

    def __bool__(self):
        return self.verdict


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise CapExceeded(f"Oracle search exceeds MODEXT_ORACLE_MAX_NODES={self.limit}")


@define(frozen=True)
class _PrimaryPart:
    """The ``p``-primary part of a middle group, with its lower term."""

    positions: tuple[int, ...]
    group: Group
    lower: frozenset[Element]

    @classmethod
    def of(cls, X: ExtObject, p: int) -> _PrimaryPart:
        positions = tuple(i for i, q in enumerate(X.B.factors) if prime_power(q)[0] == p)
        group = Group(tuple(X.B.factors[i] for i in positions))
        outside = [i for i in range(X.B.rank) if i not in positions]
        lower = frozenset(
            tuple(a[i] for i in positions) for a in X.A.elements if all(a[i] == 0 for i in outside)
        )
        return cls(positions, group, lower)

    def generators(self) -> tuple[list[Element], int]:
        """Generators of the lower part followed by generators completing the group."""
        P = self.group
        ordered = sorted(self.lower, key=P.index)
        gens = decompose(ordered, P.add, P.zero, P.element_order)
        lower_count = len(gens)
        span = set(self.lower)
        for j in range(P.rank):
            u = P.unit(j)
            if u in span:
                continue
            gens.append(u)
            steps = multiples(u, P.element_order(u), P.zero, P.add)
            span = {P.add(s, m) for s in span for m in steps}
        return gens, lower_count


def _extend(
    P: Group, Q: Group, span: dict[Element, Element], images: set[Element], g: Element, y: Element
) -> tuple[dict[Element, Element], set[Element]] | None:
    steps_g = multiples(g, P.element_order(g), P.zero, P.add)
    steps_y = multiples(y, len(steps_g), Q.zero, Q.add)
    grown = dict(span)
    seen = set(images)
    for s, fs in span.items():
        for k in range(1, len(steps_g)):
            x = P.add(s, steps_g[k])
            fx = Q.add(fs, steps_y[k])
            if x in grown:
                if grown[x] != fx:
                    return None
                continue
            if fx in seen:
                return None
            grown[x] = fx
            seen.add(fx)
    return grown, seen


def _search_primary(source: _PrimaryPart, target: _PrimaryPart, budget: _Budget) -> dict[Element, Element] | None:
    P, Q = source.group, target.group
    gens, lower_count = source.generators()
    by_order: dict[tuple[bool, int], list[Element]] = {}
    for y in Q.all_elements:
        by_order.setdefault((y in target.lower, Q.element_order(y)), []).append(y)

    def candidates(position: int, order: int) -> list[Element]:
        inside = by_order.get((True, order), [])
        if position < lower_count:
            return inside
        return sorted(inside + by_order.get((False, order), []), key=Q.index)

    def search(position: int, span: dict[Element, Element], images: set[Element]) -> dict[Element, Element] | None:
        if position == len(gens):
            return span
        g = gens[position]
        for y in candidates(position, P.element_order(g)):
            budget.spend()
            grown = _extend(P, Q, span, images, g, y)
            if grown is None:
                continue
            found = search(position + 1, *grown)
            if found is not None:
                return found
        return None

    return search(0, {P.zero: Q.zero}, {Q.zero})


def brute_force_iso(left: Sequence[ExtObject], right: Sequence[ExtObject], caps: Caps | None = None) -> OracleResult:
    """Decide whether the direct sums of two lists are isomorphic, with an explicit witness.

    Args:
        left: First list of objects (nonempty).
        right: Second list of objects (nonempty).
        caps: Optional cap override.

    Returns:
        OracleResult: The verdict, the isomorphism found and the search size.

    Raises:
        CapExceeded: If a direct sum or the search exceeds the oracle caps.
        TheoremViolation: If the assembled map fails the final isomorphism check.
    """
    caps = aggregate_caps(caps)
    left_sum, right_sum = direct_sum(left, caps), direct_sum(right, caps)
    S, T = left_sum.obj, right_sum.obj

    def stop(reason: str, nodes: int = 0) -> OracleResult:
        logger.debug(f"Oracle: {reason}")
        return OracleResult(False, None, nodes, left_sum, right_sum, reason)

    if S.B != T.B:
        return stop(f"middle groups {S.B} and {T.B} differ")
    if S.a_type != T.a_type:
        return stop(f"lower terms {S.a_type} and {T.a_type} differ")
    if S.c_type != T.c_type:
        return stop(f"upper terms {S.c_type} and {T.c_type} differ")

    budget = _Budget(caps.oracle_max_nodes)
    images: list[Element] = [S.B.zero] * S.B.rank
    for p in S.B.primes:
        source, target = _PrimaryPart.of(S, p), _PrimaryPart.of(T, p)
        found = _search_primary(source, target, budget)
        if found is None:
            return stop(f"no isomorphism of the {p}-primary parts", budget.used)
        for local, j in enumerate(source.positions):
            value = found[source.group.unit(local)]
            image = [0] * T.B.rank
            for coordinate, i in zip(value, target.positions):
                image[i] = coordinate
            images[j] = tuple(image)

    iso = ExtMorphism(S, T, Hom.from_images(S.B, T.B, images))
    if not is_iso_in_E(iso):
        raise TheoremViolation("Oracle assembled a map that is not an isomorphism of extensions")
    logger.debug(f"Oracle found an isomorphism after {budget.used} nodes")
    return OracleResult(True, iso, budget.used, left_sum, right_sum)
