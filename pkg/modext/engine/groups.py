"""Exact arithmetic for finite abelian groups.

A group is stored in canonical primary decomposition: a tuple of prime-power
cyclic orders sorted by prime ascending, exponent descending. Elements are
plain tuples of residues, one per factor. A homomorphism is an integer matrix
with one row per codomain factor and one column per domain factor.

Everything here is computed by exhaustive enumeration, so every public entry
point that enumerates checks the configured caps first.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from functools import cached_property, lru_cache
from typing import TypeVar

from attrs import define, field
from sympy import factorint

from modext.engine.caps import Caps
from modext.exceptions import DomainMismatch, TheoremViolation

logger = logging.getLogger(__name__)

__all__ = [
    "Element",
    "Group",
    "Hom",
    "QuotientView",
    "Subgroup",
    "canonical_coordinates",
    "canonicalize",
    "compose",
    "decompose",
    "enumerate_homs",
    "hom_count",
    "image",
    "is_injective",
    "is_surjective",
    "is_uniserial",
    "kernel",
    "multiples",
    "prime_power",
    "quotient",
    "subgroup_generated",
    "type_from_orders",
]

Element = tuple[int, ...]

T = TypeVar("T", bound=Hashable)


@lru_cache(maxsize=None)
def prime_power(n: int) -> tuple[int, int]:
    """Split a prime power into its prime and exponent.

    Args:
        n: The number to split.

    Returns:
        tuple[int, int]: ``(p, e)`` with ``n == p**e`` and ``e >= 1``.

    Raises:
        ValueError: If ``n`` is not a prime power greater than 1.

    Examples:
        >>> prime_power(8)
        (2, 3)
        >>> prime_power(6)
        Traceback (most recent call last):
        ...
        ValueError: 6 is not a prime power
    """
    factors = factorint(n) if n > 1 else {}
    if len(factors) != 1:
        raise ValueError(f"{n} is not a prime power")
    ((p, e),) = factors.items()
    return int(p), int(e)


def _canonical_key(order: int) -> tuple[int, int]:
    p, e = prime_power(order)
    return p, -e


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _validate_factors(instance, attribute, value):  # pylint: disable=unused-argument
    for order in value:
        prime_power(order)
    if list(value) != sorted(value, key=_canonical_key):
        raise ValueError(f"Factors {value} are not sorted by prime ascending, exponent descending")


@define(frozen=True)
class Group:
    """A finite abelian group in canonical primary decomposition.

    Attributes:
        factors: Prime-power orders of the cyclic factors; empty for the zero group.

    Examples:
        >>> G = Group((4, 2, 3))
        >>> G.order, G.primes
        (24, (2, 3))
        >>> G.add((3, 1, 2), (1, 1, 2))
        (0, 0, 1)
        >>> str(G)
        'Z/4 + Z/2 + Z/3'
    """

    factors: tuple[int, ...] = field(converter=tuple, validator=_validate_factors)

    @cached_property
    def order(self) -> int:
        """Number of elements."""
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        """Number of cyclic factors."""
        return len(self.factors)

    @property
    def is_zero(self) -> bool:
        return not self.factors

    @cached_property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    @cached_property
    def primes(self) -> tuple[int, ...]:
        """Distinct primes dividing the order, ascending."""
        return tuple(sorted({prime_power(q)[0] for q in self.factors}))

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        step = 1
        for order in reversed(self.factors):
            strides.append(step)
            step *= order
        return tuple(reversed(strides))

    @cached_property
    def all_elements(self) -> tuple[Element, ...]:
        """All elements in index order, without a cap check; callers check caps first."""
        return tuple(itertools.product(*(range(q) for q in self.factors)))

    def elements(self, caps: Caps | None = None) -> tuple[Element, ...]:
        """All elements, ordered by ``index``.

        Raises:
            CapExceeded: If the group is larger than the element-enumeration cap.
        """
        Caps.resolve(caps).check_group_order(self.order)
        return self.all_elements

    def element(self, coords: Iterable[int]) -> Element:
        """Validate coordinates and return them as an element.

        Raises:
            DomainMismatch: If the coordinate count or a residue is out of range.
        """
        x = tuple(int(c) for c in coords)
        if len(x) != len(self.factors):
            raise DomainMismatch(f"{x} has {len(x)} coordinates, {self} has {len(self.factors)} factors")
        if any(not 0 <= c < q for c, q in zip(x, self.factors)):
            raise DomainMismatch(f"{x} is not a reduced element of {self}")
        return x

    def index(self, x: Element) -> int:
        """Position of ``x`` in ``elements()``."""
        return sum(c * s for c, s in zip(x, self._strides))

    def unit(self, j: int) -> Element:
        """Generator of the ``j``-th cyclic factor."""
        return tuple(1 if i == j else 0 for i in range(len(self.factors)))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % q for a, b, q in zip(x, y, self.factors))

    def neg(self, x: Element) -> Element:
        return tuple(-a % q for a, q in zip(x, self.factors))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % q for a, q in zip(x, self.factors))

    def element_order(self, x: Element) -> int:
        return math.lcm(*(q // math.gcd(a, q) for a, q in zip(x, self.factors)))

    def __str__(self):
        return " + ".join(f"Z/{q}" for q in self.factors) if self.factors else "0"


def _split_orders(orders: Iterable[int]) -> list[tuple[int, int]]:
    """CRT-split cyclic orders into ``(source position, prime power)`` pairs."""
    parts = []
    for position, n in enumerate(orders):
        if n < 1:
            raise ValueError(f"Cyclic orders must be positive, got {n}")
        for p, e in sorted(factorint(n).items()):
            parts.append((position, int(p) ** int(e)))
    return sorted(parts, key=lambda part: _canonical_key(part[1]))


def canonicalize(orders: Iterable[int]) -> Group:
    """Build the canonical group isomorphic to the product of cyclic groups of the given orders.

    Args:
        orders: Positive cyclic orders, in any order. Entries equal to 1 are dropped.

    Returns:
        Group: The canonical primary decomposition.

    Raises:
        ValueError: If an order is not positive.

    Examples:
        >>> canonicalize([6]).factors
        (2, 3)
        >>> canonicalize([]).is_zero
        True
        >>> canonicalize([2, 4]).factors
        (4, 2)
    """
    return Group(tuple(q for _, q in _split_orders(orders)))


def canonical_coordinates(orders: Sequence[int], coords: Sequence[int]) -> Element:
    """Map coordinates given against ``orders`` into ``canonicalize(orders)``.

    Each coordinate is reduced modulo the prime-power parts of its order, so the
    map is the Chinese remainder isomorphism followed by the canonical sort.

    Raises:
        DomainMismatch: If the coordinate count does not match the orders.

    Examples:
        >>> canonical_coordinates([3, 2], [1, 0])
        (0, 1)
        >>> canonical_coordinates([6], [3])
        (1, 0)
    """
    if len(orders) != len(coords):
        raise DomainMismatch(f"{tuple(coords)} has {len(coords)} coordinates for {len(orders)} cyclic orders")
    return tuple(coords[position] % q for position, q in _split_orders(orders))


def is_uniserial(G: Group) -> bool:
    """True iff ``G`` is cyclic of prime-power order. The zero group is not uniserial."""
    return len(G.factors) == 1


def _exact_log(n: int, p: int) -> int:
    e = 0
    while n > 1 and n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError("Element orders do not come from a finite abelian group")
    return e


def type_from_orders(orders: Iterable[int]) -> Group:
    """Identify a finite abelian group from the multiset of its element orders.

    For each prime ``p`` the number of elements killed by ``p**k`` is
    ``p**r_k`` where ``r_k`` counts the factors of exponent at least ``k``;
    the factor exponents follow from the differences of the ``r_k``.

    Raises:
        ValueError: If the multiset cannot be the order multiset of a group.

    Examples:
        >>> type_from_orders([1, 2, 2, 2]).factors
        (2, 2)
        >>> type_from_orders([1, 4, 2, 4]).factors
        (4,)
    """
    counts = Counter(orders)
    primes = sorted({int(p) for order in counts if order > 1 for p in factorint(order)})
    factors: list[int] = []
    for p in primes:
        top = max(_exact_log(order, p) for order in counts if order > 1 and _is_power_of(order, p))
        at_least = []
        previous = 0
        for k in range(1, top + 1):
            killed = sum(c for order, c in counts.items() if (p**k) % order == 0)
            log = _exact_log(killed, p)
            at_least.append(log - previous)
            previous = log
        at_least.append(0)
        for k in range(top, 0, -1):
            factors.extend([p**k] * (at_least[k - 1] - at_least[k]))
    return Group(tuple(factors))


def _relative_order(x: T, span: set[T] | frozenset[T], add: Callable[[T, T], T]) -> int:
    n, y = 1, x
    while y not in span:
        y = add(y, x)
        n += 1
    return n


def multiples(x: T, order: int, zero: T, add: Callable[[T, T], T]) -> list[T]:
    out = [zero]
    for _ in range(order - 1):
        out.append(add(out[-1], x))
    return out


def decompose(
    elements: Sequence[T],
    add: Callable[[T, T], T],
    zero: T,
    order_of: Callable[[T], int],
) -> list[T]:
    """Find independent cyclic generators of a finite abelian group.

    Works prime by prime. Inside a primary part it repeatedly picks an element
    of largest order whose cyclic span meets the span found so far only in 0;
    such a span is always a direct summand, so the chosen generators split the
    group into a direct sum of cyclic groups.

    Args:
        elements: All elements of the group, in a deterministic order.
        add: Group addition.
        zero: Neutral element.
        order_of: Order of an element.

    Returns:
        list: Generators ordered by prime ascending, order descending, so their
        orders are the canonical factors of the group.

    Raises:
        TheoremViolation: If no admissible generator is found (impossible for a group).
    """
    orders = {x: order_of(x) for x in elements}
    primes = sorted({int(p) for order in orders.values() if order > 1 for p in factorint(order)})
    basis: list[T] = []
    for p in primes:
        primary = [x for x in elements if orders[x] > 1 and _is_power_of(orders[x], p)]
        span = {zero}
        while len(span) < len(primary) + 1:
            best, best_order = None, 1
            for x in primary:
                if orders[x] > best_order and _relative_order(x, span, add) == orders[x]:
                    best, best_order = x, orders[x]
            if best is None:
                raise TheoremViolation(f"No independent generator left in the {p}-primary part")
            basis.append(best)
            steps = multiples(best, best_order, zero, add)
            span = {add(s, m) for s in span for m in steps}
    return basis


@define(frozen=True)
class Subgroup:
    """A subgroup stored with its full element set.

    Equality compares the ambient group and the element set; the generators
    are only a record of how the subgroup was produced.

    Attributes:
        ambient: The group containing the subgroup.
        elements: Every element of the subgroup.
        generators: Elements generating the subgroup.
    """

    ambient: Group
    elements: frozenset[Element] = field(converter=frozenset)
    generators: tuple[Element, ...] = field(default=(), eq=False, converter=tuple)

    @classmethod
    def from_elements(cls, ambient: Group, elements: Iterable[Element]) -> Subgroup:
        """Wrap a known element set, computing independent generators for it."""
        elements = frozenset(elements)
        ordered = sorted(elements, key=ambient.index)
        gens = decompose(ordered, ambient.add, ambient.zero, ambient.element_order)
        return cls(ambient, elements, tuple(gens))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __contains__(self, x: Element) -> bool:
        return x in self.elements

    @cached_property
    def canonical_type(self) -> Group:
        """Isomorphism type, read off the element-order multiset."""
        return type_from_orders(self.ambient.element_order(x) for x in self.elements)

    @cached_property
    def basis(self) -> tuple[Element, ...]:
        """Independent generators whose orders are ``canonical_type.factors``."""
        ordered = sorted(self.elements, key=self.ambient.index)
        basis = tuple(decompose(ordered, self.ambient.add, self.ambient.zero, self.ambient.element_order))
        found = tuple(self.ambient.element_order(b) for b in basis)
        if found != self.canonical_type.factors:
            raise TheoremViolation(f"Decomposition {found} disagrees with type {self.canonical_type}")
        return basis

    @cached_property
    def embedding(self) -> Hom:
        """Injective map from ``canonical_type`` onto this subgroup."""
        return Hom.from_images(self.canonical_type, self.ambient, self.basis)

    @cached_property
    def coordinates(self) -> dict[Element, Element]:
        """Inverse of ``embedding``: subgroup element to ``canonical_type`` element."""
        table = self.embedding.table
        return {image: x for x, image in zip(self.canonical_type.all_elements, table)}


def _to_matrix(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in rows)


@define(frozen=True)
class Hom:
    """A homomorphism between two canonical groups.

    ``matrix[i][j]`` is the ``i``-th coordinate of the image of the ``j``-th
    domain generator, a residue modulo the ``i``-th codomain factor ``e_i``.
    It is well defined iff ``d_j * matrix[i][j] % e_i == 0`` for the domain
    factor orders ``d_j``.

    Examples:
        >>> Z4 = Group((4,))
        >>> double = Hom(Z4, Z4, ((2,),))
        >>> double((3,))
        (2,)
    """

    domain: Group
    codomain: Group
    matrix: tuple[tuple[int, ...], ...] = field(converter=_to_matrix)

    def __attrs_post_init__(self):
        if len(self.matrix) != self.codomain.rank or any(len(row) != self.domain.rank for row in self.matrix):
            raise DomainMismatch(f"Matrix shape does not fit {self.domain} -> {self.codomain}")
        for row, e in zip(self.matrix, self.codomain.factors):
            for m, d in zip(row, self.domain.factors):
                if not 0 <= m < e or (d * m) % e:
                    raise DomainMismatch(f"Entry {m} is not a well-defined map Z/{d} -> Z/{e}")

    @classmethod
    def identity(cls, G: Group) -> Hom:
        return cls(G, G, tuple(G.unit(i) for i in range(G.rank)))

    @classmethod
    def zero(cls, G: Group, H: Group) -> Hom:
        return cls(G, H, tuple((0,) * G.rank for _ in range(H.rank)))

    @classmethod
    def from_images(cls, G: Group, H: Group, images: Sequence[Element]) -> Hom:
        """Build the map sending the ``j``-th generator of ``G`` to ``images[j]``."""
        if len(images) != G.rank:
            raise DomainMismatch(f"{len(images)} images given for {G.rank} generators")
        return cls(G, H, tuple(tuple(image[i] for image in images) for i in range(H.rank)))

    def __call__(self, x: Element) -> Element:
        return tuple(
            sum(m * c for m, c in zip(row, x)) % e for row, e in zip(self.matrix, self.codomain.factors)
        )

    @cached_property
    def table(self) -> tuple[Element, ...]:
        """Images of all domain elements, in domain index order."""
        return tuple(self(x) for x in self.domain.all_elements)

    @property
    def images(self) -> tuple[Element, ...]:
        """Images of the domain generators."""
        return tuple(tuple(row[j] for row in self.matrix) for j in range(self.domain.rank))

    def _check_parallel(self, other: Hom) -> None:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise DomainMismatch(
                f"Cannot add maps {self.domain} -> {self.codomain} and {other.domain} -> {other.codomain}"
            )

    def __add__(self, other: Hom) -> Hom:
        self._check_parallel(other)
        return Hom(
            self.domain,
            self.codomain,
            tuple(
                tuple((a + b) % e for a, b in zip(row, other_row))
                for row, other_row, e in zip(self.matrix, other.matrix, self.codomain.factors)
            ),
        )

    def __neg__(self) -> Hom:
        return Hom(
            self.domain,
            self.codomain,
            tuple(tuple(-a % e for a in row) for row, e in zip(self.matrix, self.codomain.factors)),
        )

    def __sub__(self, other: Hom) -> Hom:
        return self + (-other)

    def __str__(self):
        return f"{self.domain} -> {self.codomain} {[list(row) for row in self.matrix]}"


def hom_count(G: Group, H: Group) -> int:
    """Number of homomorphisms ``G -> H``: the product of ``gcd(d_j, e_i)``."""
    return math.prod(math.gcd(d, e) for e in H.factors for d in G.factors)


def enumerate_homs(G: Group, H: Group, caps: Caps | None = None) -> Iterator[Hom]:
    """Yield every homomorphism ``G -> H`` exactly once.

    Entry ``(i, j)`` ranges over the multiples of ``e_i / gcd(d_j, e_i)`` in
    ``[0, e_i)``, which are exactly the well-defined images of the ``j``-th
    generator in the ``i``-th factor.

    Raises:
        CapExceeded: If a group exceeds the element cap or the predicted count exceeds the hom cap.
    """
    caps = Caps.resolve(caps)
    caps.check_group_order(G.order, "domain")
    caps.check_group_order(H.order, "codomain")
    caps.check_hom_count(hom_count(G, H))
    return _iter_homs(G, H)


def _iter_homs(G: Group, H: Group) -> Iterator[Hom]:
    columns = G.rank
    choices = [range(0, e, e // math.gcd(d, e)) for e in H.factors for d in G.factors]
    for flat in itertools.product(*choices):
        yield Hom(G, H, tuple(flat[i * columns : (i + 1) * columns] for i in range(H.rank)))


def compose(g: Hom, f: Hom) -> Hom:
    """Return ``g`` after ``f``.

    Raises:
        DomainMismatch: If ``f.codomain`` is not ``g.domain``.
    """
    if f.codomain != g.domain:
        raise DomainMismatch(f"Cannot compose {g.domain} -> {g.codomain} after {f.domain} -> {f.codomain}")
    inner = range(f.codomain.rank)
    return Hom(
        f.domain,
        g.codomain,
        tuple(
            tuple(sum(g_row[k] * f.matrix[k][j] for k in inner) % e for j in range(f.domain.rank))
            for g_row, e in zip(g.matrix, g.codomain.factors)
        ),
    )


def kernel(h: Hom, caps: Caps | None = None) -> Subgroup:
    """Elements of the domain sent to zero."""
    domain = h.domain
    zero = h.codomain.zero
    return Subgroup.from_elements(domain, (x for x, y in zip(domain.elements(caps), h.table) if y == zero))


def image(h: Hom, caps: Caps | None = None) -> Subgroup:
    """Image of the domain."""
    caps = Caps.resolve(caps)
    caps.check_group_order(h.domain.order, "domain")
    caps.check_group_order(h.codomain.order, "codomain")
    return Subgroup.from_elements(h.codomain, set(h.table))


def is_injective(h: Hom) -> bool:
    return len(set(h.table)) == h.domain.order


def is_surjective(h: Hom) -> bool:
    return len(set(h.table)) == h.codomain.order


def subgroup_generated(B: Group, gens: Iterable[Iterable[int]], caps: Caps | None = None) -> Subgroup:
    """Close a list of elements of ``B`` under addition.

    Raises:
        DomainMismatch: If a generator is not an element of ``B``.
        CapExceeded: If ``B`` is larger than the element cap.

    Examples:
        >>> sub = subgroup_generated(Group((4, 2)), [(2, 0)])
        >>> sub.order, sub.canonical_type.factors
        (2, (2,))
    """
    Caps.resolve(caps).check_group_order(B.order)
    gens = tuple(B.element(g) for g in gens)
    span = {B.zero}
    for g in gens:
        steps = multiples(g, B.element_order(g), B.zero, B.add)
        span = {B.add(s, m) for s in span for m in steps}
    return Subgroup(B, frozenset(span), gens)


@define(frozen=True, eq=False)
class QuotientView:
    """The quotient ``ambient / kernel`` identified with a canonical group.

    Cosets are numbered in the order their smallest element appears in
    ``ambient.elements()``, so coset 0 is the kernel itself.

    Attributes:
        ambient: The group being divided.
        kernel: The subgroup divided out.
        coset_table: Coset number of every ambient element.
        representatives: Smallest element of each coset.
        abstract_type: Canonical group isomorphic to the quotient.
        lifts: Ambient elements mapping to the generators of ``abstract_type``.
        coset_coordinates: Element of ``abstract_type`` for each coset number.
    """

    ambient: Group
    kernel: Subgroup
    coset_table: dict[Element, int]
    representatives: tuple[Element, ...]
    abstract_type: Group
    lifts: tuple[Element, ...]
    coset_coordinates: dict[int, Element]

    @property
    def order(self) -> int:
        return self.abstract_type.order

    @property
    def is_zero(self) -> bool:
        return self.abstract_type.is_zero

    def project(self, x: Element) -> Element:
        """Image of an ambient element in ``abstract_type``."""
        return self.coset_coordinates[self.coset_table[x]]

    def lift(self, t: Element) -> Element:
        """An ambient element projecting to ``t``."""
        x = self.ambient.zero
        for k, lift in zip(t, self.lifts):
            x = self.ambient.add(x, self.ambient.scale(k, lift))
        return x

    @cached_property
    def projection(self) -> Hom:
        """The projection as a homomorphism ``ambient -> abstract_type``."""
        images = [self.project(self.ambient.unit(j)) for j in range(self.ambient.rank)]
        return Hom.from_images(self.ambient, self.abstract_type, images)


def quotient(B: Group, A: Subgroup, caps: Caps | None = None) -> QuotientView:
    """Build the quotient ``B / A`` with an explicit canonical identification.

    Raises:
        DomainMismatch: If ``A`` is not a subgroup of ``B``.
        CapExceeded: If ``B`` is larger than the element cap.

    Examples:
        >>> Z4 = Group((4,))
        >>> quotient(Z4, subgroup_generated(Z4, [(2,)])).abstract_type.factors
        (2,)
    """
    if A.ambient != B:
        raise DomainMismatch(f"Subgroup lives in {A.ambient}, not in {B}")
    coset_table: dict[Element, int] = {}
    representatives: list[Element] = []
    for x in B.elements(caps):
        if x in coset_table:
            continue
        number = len(representatives)
        representatives.append(x)
        for a in A.elements:
            coset_table[B.add(x, a)] = number

    def add(c: int, d: int) -> int:
        return coset_table[B.add(representatives[c], representatives[d])]

    def order_of(c: int) -> int:
        return _relative_order(representatives[c], A.elements, B.add)

    cosets = range(len(representatives))
    abstract_type = type_from_orders(order_of(c) for c in cosets)
    basis = decompose(list(cosets), add, 0, order_of)
    if tuple(order_of(c) for c in basis) != abstract_type.factors:
        raise TheoremViolation(f"Quotient decomposition disagrees with type {abstract_type}")
    lifts = tuple(representatives[c] for c in basis)

    coset_coordinates: dict[int, Element] = {}
    for t in abstract_type.all_elements:
        x = B.zero
        for k, lift in zip(t, lifts):
            x = B.add(x, B.scale(k, lift))
        coset_coordinates[coset_table[x]] = t
    logger.debug(f"Quotient of {B} by a subgroup of order {A.order} is {abstract_type}")
    return QuotientView(
        ambient=B,
        kernel=A,
        coset_table=coset_table,
        representatives=tuple(representatives),
        abstract_type=abstract_type,
        lifts=lifts,
        coset_coordinates=coset_coordinates,
    )
