"""Bipartite digraphs: Hall-type conditions and mutual-reachability pairings.

A bipartite digraph on vertex sets ``X`` and ``Y`` satisfies the Hall-type
condition when every vertex set ``T`` has at least ``|T|`` out-neighbors.
When it holds, ``|X| = |Y|`` and the vertices can be paired so that each
``x`` and its ``y`` lie on a common directed cycle.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence

import networkx as nx
from attrs import define, field

from modext.engine.caps import Caps
from modext.exceptions import CapExceeded, DomainMismatch, TheoremViolation, UnknownVertex

logger = logging.getLogger(__name__)

__all__ = [
    "BipartiteDigraph",
    "HallResult",
    "KSRelabeling",
    "hall_condition",
    "ks_relabel",
    "max_bipartite_matching",
    "out_neighborhood",
]

Vertex = str
Edge = tuple[Vertex, Vertex]


def _edge_set(edges: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset((str(a), str(b)) for a, b in edges)


@define(frozen=True)
class BipartiteDigraph:
    """A digraph whose edges all run between ``X`` and ``Y``.

    Attributes:
        X: First side, in declaration order.
        Y: Second side, in declaration order.
        edges: Ordered pairs, each in ``X × Y`` or ``Y × X``.

    Raises:
        DomainMismatch: If the sides overlap or repeat a vertex, or an edge stays inside one side.
        UnknownVertex: If an edge mentions a vertex of neither side.
    """

    X: tuple[Vertex, ...] = field(converter=tuple)
    Y: tuple[Vertex, ...] = field(converter=tuple)
    edges: frozenset[Edge] = field(converter=_edge_set, factory=frozenset)

    def __attrs_post_init__(self):
        if len(set(self.X)) != len(self.X) or len(set(self.Y)) != len(self.Y):
            raise DomainMismatch("Digraph sides contain repeated vertices")
        if set(self.X) & set(self.Y):
            raise DomainMismatch(f"Digraph sides overlap in {sorted(set(self.X) & set(self.Y))}")
        xs, ys = set(self.X), set(self.Y)
        for a, b in sorted(self.edges):
            for v in (a, b):
                if v not in xs and v not in ys:
                    raise UnknownVertex(f"Edge {a}>{b} mentions unknown vertex {v!r}")
            if (a in xs) == (b in xs):
                raise DomainMismatch(f"Edge {a}>{b} stays inside one side")

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self.X + self.Y

    def successors(self, v: Vertex) -> list[Vertex]:
        """Out-neighbors of ``v`` in declaration order."""
        return [w for w in self.vertices if (v, w) in self.edges]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(sorted(self.edges))
        return graph

    def __str__(self):
        arrows = " ".join(f"{a}>{b}" for a, b in sorted(self.edges))
        return f"X {' '.join(self.X)} Y {' '.join(self.Y)} E {arrows}".rstrip()


def out_neighborhood(D: BipartiteDigraph, T: Iterable[Vertex]) -> frozenset[Vertex]:
    """Return the set of edge-successors of the vertex set ``T``.

    Examples:
        >>> D = BipartiteDigraph(["x1", "x2"], ["y1"], [("x1", "y1"), ("x2", "y1")])
        >>> sorted(out_neighborhood(D, {"x1", "x2"}))
        ['y1']

    Raises:
        UnknownVertex: If ``T`` contains a vertex outside ``X ∪ Y``.
    """
    T = set(T)
    unknown = T - set(D.vertices)
    if unknown:
        raise UnknownVertex(f"Unknown vertices {sorted(unknown)}")
    return frozenset(b for a, b in D.edges if a in T)


def max_bipartite_matching(
    left: Sequence[Vertex], right: Sequence[Vertex], adjacent: set[Edge] | frozenset[Edge]
) -> dict[Vertex, Vertex]:
    """Maximum matching from ``left`` into ``right`` by augmenting paths.

    Left vertices are processed in order and candidates are tried in the order
    of ``right``, so the result is deterministic.

    Returns:
        dict: Maps each matched left vertex to its partner.
    """
    # owner[j] = left vertex currently matched to right[j]
    owner: list[Vertex | None] = [None] * len(right)

    def search(x: Vertex, seen: list[bool]) -> bool:
        for j, y in enumerate(right):
            if (x, y) in adjacent and not seen[j]:
                seen[j] = True
                if owner[j] is None or search(owner[j], seen):
                    owner[j] = x
                    return True
        return False

    for x in left:
        search(x, [False] * len(right))
    return {x: right[j] for j, x in enumerate(owner) if x is not None}


@define(frozen=True)
class HallResult:
    """Outcome of a Hall-condition check; truthy iff the condition holds.

    Attributes:
        holds: Whether ``|T| <= |N⁺(T)|`` for every vertex set ``T``.
        witness: A violating set, when the condition fails.
        mode: ``"brute"`` or ``"matching"``.
    """

    holds: bool
    witness: frozenset[Vertex] | None = None
    mode: str = "matching"

    def __bool__(self):
        return self.holds


def _brute_force_side(D: BipartiteDigraph, side: Sequence[Vertex]) -> frozenset[Vertex] | None:
    for size in range(1, len(side) + 1):
        for T in itertools.combinations(side, size):
            if len(out_neighborhood(D, T)) < size:
                return frozenset(T)
    return None


def _matching_side(D: BipartiteDigraph, side: Sequence[Vertex], other: Sequence[Vertex]) -> frozenset[Vertex] | None:
    matching = max_bipartite_matching(side, other, D.edges)
    free = [x for x in side if x not in matching]
    if not free:
        return None
    # Vertices of `side` reachable from a free vertex along alternating paths
    # form a set whose out-neighbors are all matched back into it.
    partner = {y: x for x, y in matching.items()}
    reached = {free[0]}
    frontier = [free[0]]
    while frontier:
        x = frontier.pop()
        for y in D.successors(x):
            z = partner.get(y)
            if z is not None and z not in reached:
                reached.add(z)
                frontier.append(z)
    return frozenset(reached)


def hall_condition(D: BipartiteDigraph, mode: str = "matching", caps: Caps | None = None) -> HallResult:
    """Check ``|T| <= |N⁺(T)|`` for every vertex set ``T``.

    Since every edge crosses sides, it suffices to check subsets of ``X`` and
    subsets of ``Y`` separately. Brute-force mode enumerates them (smallest
    violating set first); matching mode runs a maximum matching from each
    side and extracts a violating set from the alternating paths.

    Args:
        D: The digraph.
        mode: ``"brute"`` or ``"matching"``.
        caps: Optional cap override.

    Returns:
        HallResult: Truthy iff the condition holds, with a witness otherwise.

    Raises:
        CapExceeded: In brute-force mode, if the digraph has too many vertices.
        ValueError: For an unknown mode.
    """
    if mode == "brute":
        caps = Caps.resolve(caps)
        if len(D.vertices) > caps.digraph_brute_force_max_vertices:
            raise CapExceeded(
                f"{len(D.vertices)} vertices exceed "
                f"MODEXT_DIGRAPH_BRUTE_FORCE_MAX_VERTICES={caps.digraph_brute_force_max_vertices}"
            )
        witness = _brute_force_side(D, D.X) or _brute_force_side(D, D.Y)
    elif mode == "matching":
        witness = _matching_side(D, D.X, D.Y) or _matching_side(D, D.Y, D.X)
    else:
        raise ValueError(f"Unknown Hall-condition mode: {mode!r}")
    return HallResult(witness is None, witness, mode)


@define(frozen=True)
class KSRelabeling:
    """A pairing of ``X`` with ``Y`` by mutual reachability, or a Hall witness.

    Attributes:
        pairing: Pairs ``(x, y)`` in the order of ``X``; empty on failure.
        witness: A set violating the Hall condition, on failure.
    """

    pairing: tuple[tuple[Vertex, Vertex], ...] = ()
    witness: frozenset[Vertex] | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None

    def __bool__(self):
        return self.ok


def ks_relabel(D: BipartiteDigraph) -> KSRelabeling:
    """Pair every ``x`` with a ``y`` in the same strongly connected component.

    Raises:
        TheoremViolation: If the Hall condition holds but no valid pairing exists.
    """
    hall = hall_condition(D, mode="matching")
    if not hall:
        return KSRelabeling(witness=hall.witness)
    if len(D.X) != len(D.Y):
        raise TheoremViolation(f"Hall condition holds but |X| = {len(D.X)} != |Y| = {len(D.Y)}")

    graph = D.to_networkx()
    component = {v: number for number, scc in enumerate(nx.strongly_connected_components(graph)) for v in scc}
    same_component = {(x, y) for x in D.X for y in D.Y if component[x] == component[y]}
    matching = max_bipartite_matching(D.X, D.Y, same_component)
    if len(matching) != len(D.X):
        raise TheoremViolation(f"Hall condition holds but only {len(matching)} of {len(D.X)} vertices pair up")

    pairing = tuple((x, matching[x]) for x in D.X)
    for x, y in pairing:
        if not (nx.has_path(graph, x, y) and nx.has_path(graph, y, x)):
            raise TheoremViolation(f"Paired vertices {x} and {y} are not mutually reachable")
    logger.debug(f"Paired {D}: {pairing}")
    return KSRelabeling(pairing=pairing)
