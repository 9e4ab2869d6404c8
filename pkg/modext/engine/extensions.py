"""Objects and morphisms of the category of extensions.

An object is a short exact sequence ``0 -> A -> B -> C -> 0`` of finite
abelian groups, stored as the group ``B`` with the distinguished subgroup
``A`` and the derived quotient ``C = B / A``. A morphism is a group
homomorphism ``f: B -> B'`` with ``f(A) ⊆ A'``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from functools import cached_property

from attrs import define, evolve, field

from modext.engine.caps import Caps
from modext.engine.groups import (
    Element,
    Group,
    Hom,
    QuotientView,
    Subgroup,
    compose,
    enumerate_homs,
    is_injective,
    is_uniserial,
    prime_power,
    quotient,
    subgroup_generated,
)
from modext.exceptions import DomainMismatch, ScopeViolation

logger = logging.getLogger(__name__)

__all__ = [
    "DirectSum",
    "ExtMorphism",
    "ExtObject",
    "aggregate_caps",
    "build_ext",
    "compose_morphisms",
    "direct_sum",
    "element_images",
    "induce_upper",
    "invert",
    "is_iso_in_E",
    "is_split",
    "make_ext",
    "morphisms",
    "restrict_lower",
]


def _uniserial_or_zero(G: Group) -> bool:
    return G.is_zero or is_uniserial(G)


@define(frozen=True)
class ExtObject:
    """An extension ``0 -> A -> B -> C -> 0``.

    Two objects are equal when they have the same ``B`` and the same subgroup ``A``.

    Attributes:
        B: The middle group.
        A: The image of the lower term inside ``B``.
        C: The quotient ``B / A``.
    """

    B: Group
    A: Subgroup
    C: QuotientView = field(eq=False, repr=False)

    @classmethod
    def zero(cls) -> ExtObject:
        """The zero object ``0 -> 0 -> 0 -> 0 -> 0``."""
        return make_ext(Group(()), [], allow_zero=True)

    @property
    def a_type(self) -> Group:
        """Isomorphism type of the lower term."""
        return self.A.canonical_type

    @property
    def c_type(self) -> Group:
        """Isomorphism type of the upper term."""
        return self.C.abstract_type

    @property
    def is_zero(self) -> bool:
        return self.B.is_zero

    @property
    def in_u(self) -> bool:
        """Both end terms are nonzero and uniserial."""
        return is_uniserial(self.a_type) and is_uniserial(self.c_type)

    @property
    def in_u0(self) -> bool:
        """The lower term is zero and the upper term is nonzero uniserial."""
        return self.a_type.is_zero and is_uniserial(self.c_type)

    @property
    def in_u_upper0(self) -> bool:
        """The upper term is zero and the lower term is nonzero uniserial."""
        return self.c_type.is_zero and is_uniserial(self.a_type)

    @property
    def scope_flags(self) -> dict[str, bool]:
        return {"in_U": self.in_u, "in_U0": self.in_u0, "in_Uupper0": self.in_u_upper0}

    @property
    def in_scope(self) -> bool:
        """Both end terms are uniserial or zero."""
        return _uniserial_or_zero(self.a_type) and _uniserial_or_zero(self.c_type)

    def lower_part(self) -> ExtObject:
        """The sequence ``0 -> A -> A -> 0 -> 0`` on the lower term's type."""
        A = self.a_type
        return make_ext(A, [A.unit(i) for i in range(A.rank)], allow_zero=True)

    def upper_part(self) -> ExtObject:
        """The sequence ``0 -> 0 -> C -> C -> 0`` on the upper term's type."""
        return make_ext(self.c_type, [], allow_zero=True)

    def describe(self) -> str:
        return f"({self.B}; A = {self.a_type}, C = {self.c_type})"


def build_ext(B: Group, A: Subgroup, caps: Caps | None = None) -> ExtObject:
    """Assemble an object from ``B`` and a subgroup, without any scope check."""
    return ExtObject(B, A, quotient(B, A, caps))


def make_ext(
    B: Group,
    gens_of_A: Iterable[Iterable[int]],
    caps: Caps | None = None,
    allow_zero: bool = False,
) -> ExtObject:
    """Build an in-scope object from ``B`` and generators of ``A``.

    Args:
        B: The middle group.
        gens_of_A: Elements of ``B`` generating the lower term.
        caps: Optional cap override.
        allow_zero: Accept the zero group for ``B``, producing the zero object.

    Returns:
        ExtObject: The object with its derived quotient.

    Raises:
        ScopeViolation: If ``B`` is zero without ``allow_zero``, or ``A`` or ``C``
            is neither zero nor uniserial.
        DomainMismatch: If a generator is not an element of ``B``.

    Examples:
        >>> X = make_ext(Group((4,)), [(2,)])
        >>> X.in_u, X.c_type.factors
        (True, (2,))
    """
    if B.is_zero and not allow_zero:
        raise ScopeViolation("The middle group is zero; use ExtObject.zero() for the zero object")
    A = subgroup_generated(B, gens_of_A, caps)
    if not _uniserial_or_zero(A.canonical_type):
        raise ScopeViolation(f"Lower term {A.canonical_type} of {B} is neither zero nor uniserial")
    X = build_ext(B, A, caps)
    if not _uniserial_or_zero(X.c_type):
        raise ScopeViolation(f"Upper term {X.c_type} of {B} is neither zero nor uniserial")
    return X


@define(frozen=True)
class ExtMorphism:
    """A morphism of extensions: a homomorphism of the middle groups carrying ``A`` into ``A'``.

    Attributes:
        source: Domain object.
        target: Codomain object.
        f: The homomorphism ``source.B -> target.B``.
    """

    source: ExtObject
    target: ExtObject
    f: Hom

    def __attrs_post_init__(self):
        if self.f.domain != self.source.B or self.f.codomain != self.target.B:
            raise DomainMismatch(f"{self.f} does not map {self.source.B} to {self.target.B}")
        if any(self.f(a) not in self.target.A for a in self.source.A.basis):
            raise DomainMismatch(f"{self.f} does not carry the lower term into the target lower term")

    @classmethod
    def identity(cls, X: ExtObject) -> ExtMorphism:
        return cls(X, X, Hom.identity(X.B))

    @classmethod
    def zero(cls, X: ExtObject, Y: ExtObject) -> ExtMorphism:
        return cls(X, Y, Hom.zero(X.B, Y.B))

    @cached_property
    def lower(self) -> Hom:
        """The restriction to the lower terms, see ``restrict_lower``."""
        src, dst = self.source.A, self.target.A
        images = [dst.coordinates[self.f(a)] for a in src.basis]
        return Hom.from_images(src.canonical_type, dst.canonical_type, images)

    @cached_property
    def upper(self) -> Hom:
        """The induced map on the upper terms, see ``induce_upper``."""
        src, dst = self.source.C, self.target.C
        images = [dst.project(self.f(lift)) for lift in src.lifts]
        return Hom.from_images(src.abstract_type, dst.abstract_type, images)

    def __add__(self, other: ExtMorphism) -> ExtMorphism:
        return ExtMorphism(self.source, self.target, self.f + other.f)

    def __sub__(self, other: ExtMorphism) -> ExtMorphism:
        return ExtMorphism(self.source, self.target, self.f - other.f)


def restrict_lower(m: ExtMorphism) -> Hom:
    """``f`` restricted to ``A -> A'``, written on the canonical types of the lower terms."""
    return m.lower


def induce_upper(m: ExtMorphism) -> Hom:
    """The unique map ``C -> C'`` with ``induce_upper(m) ∘ proj = proj' ∘ f``."""
    return m.upper


def compose_morphisms(g: ExtMorphism, f: ExtMorphism) -> ExtMorphism:
    """Return ``g`` after ``f``.

    Raises:
        DomainMismatch: If ``f.target`` is not ``g.source``.
    """
    if f.target != g.source:
        raise DomainMismatch("Cannot compose morphisms whose middle objects differ")
    return ExtMorphism(f.source, g.target, compose(g.f, f.f))


def morphisms(X: ExtObject, Y: ExtObject, caps: Caps | None = None) -> Iterator[ExtMorphism]:
    """Yield every morphism ``X -> Y``: the homomorphisms ``B -> B'`` carrying ``A`` into ``A'``.

    Raises:
        CapExceeded: If the hom enumeration exceeds a cap.
    """
    homs = enumerate_homs(X.B, Y.B, caps)
    gens = X.A.basis
    target = Y.A
    return (ExtMorphism(X, Y, h) for h in homs if all(h(a) in target for a in gens))


def is_iso_in_E(m: ExtMorphism) -> bool:
    """True iff ``f`` is a group isomorphism with ``f(A) = A'``."""
    return (
        m.source.B.order == m.target.B.order
        and m.source.A.order == m.target.A.order
        and is_injective(m.f)
    )


def invert(m: ExtMorphism) -> ExtMorphism:
    """Inverse of an isomorphism of extensions.

    Raises:
        DomainMismatch: If ``m`` is not an isomorphism.
    """
    if not is_iso_in_E(m):
        raise DomainMismatch("Only isomorphisms of extensions can be inverted")
    preimage = {y: x for x, y in zip(m.source.B.all_elements, m.f.table)}
    target = m.target.B
    images = [preimage[target.unit(j)] for j in range(target.rank)]
    return ExtMorphism(m.target, m.source, Hom.from_images(target, m.source.B, images))


@define(frozen=True)
class DirectSum:
    """A direct sum of objects with its canonical injections and projections.

    Attributes:
        summands: The summed objects, in order.
        obj: The sum itself, an ordinary ``ExtObject`` over the product group.
        injections: ``injections[k]`` embeds ``summands[k]`` into ``obj``.
        projections: ``projections[k]`` projects ``obj`` onto ``summands[k]``.
    """

    summands: tuple[ExtObject, ...]
    obj: ExtObject
    injections: tuple[ExtMorphism, ...]
    projections: tuple[ExtMorphism, ...]


def aggregate_caps(caps: Caps | None) -> Caps:
    """Caps for direct sums: element enumeration may reach the oracle bound."""
    caps = Caps.resolve(caps)
    return evolve(caps, max_group_order=max(caps.max_group_order, caps.oracle_max_order))


def direct_sum(objects: Sequence[ExtObject], caps: Caps | None = None) -> DirectSum:
    """Form the direct sum of a nonempty list of objects.

    The middle group is the canonical form of the concatenated factor lists;
    the lower term is generated by the embedded lower terms. The sum is exempt
    from the uniserial scope check.

    Raises:
        ValueError: If ``objects`` is empty.
        CapExceeded: If the product of the middle orders exceeds the oracle cap.
    """
    if not objects:
        raise ValueError("A direct sum needs at least one object")
    caps = aggregate_caps(caps)
    total = 1
    for X in objects:
        total *= X.B.order
    caps.check_oracle_order(total)

    slots = [(q, k, j) for k, X in enumerate(objects) for j, q in enumerate(X.B.factors)]
    ordered = sorted(slots, key=lambda slot: _canonical_slot_key(slot[0]))
    B = Group(tuple(q for q, _, _ in ordered))
    position = {(k, j): i for i, (_, k, j) in enumerate(ordered)}

    inclusion_homs = []
    projection_homs = []
    for k, X in enumerate(objects):
        images = [B.unit(position[(k, j)]) for j in range(X.B.rank)]
        inclusion_homs.append(Hom.from_images(X.B, B, images))
        back = [
            X.B.unit(slot_j) if slot_k == k else X.B.zero
            for _, slot_k, slot_j in ordered
        ]
        projection_homs.append(Hom.from_images(B, X.B, back))

    gens = [inc(a) for inc, X in zip(inclusion_homs, objects) for a in X.A.basis]
    total_obj = build_ext(B, subgroup_generated(B, gens, caps), caps)
    injections = tuple(ExtMorphism(X, total_obj, h) for X, h in zip(objects, inclusion_homs))
    projections = tuple(ExtMorphism(total_obj, X, h) for X, h in zip(objects, projection_homs))
    return DirectSum(tuple(objects), total_obj, injections, projections)


def _canonical_slot_key(order: int) -> tuple[int, int]:
    p, e = prime_power(order)
    return p, -e


def is_split(X: ExtObject, caps: Caps | None = None) -> bool:
    """True iff some homomorphism ``r: B -> A`` restricts to the identity on ``A``.

    Searched by brute force over ``Hom(B, A)``, with ``A`` written on its canonical type.

    Raises:
        CapExceeded: If the hom enumeration exceeds a cap.
    """
    A = X.A
    if A.is_trivial:
        return True
    A_type = A.canonical_type
    wanted = [A_type.unit(k) for k in range(A_type.rank)]
    for r in enumerate_homs(X.B, A_type, caps):
        if all(r(a) == e for a, e in zip(A.basis, wanted)):
            logger.debug(f"{X.describe()} splits via {r}")
            return True
    return False


def element_images(m: ExtMorphism) -> list[list[Element]]:
    """Generator-image table of ``m``: the image of each generator of the source middle group."""
    return [list(image) for image in m.f.images]
