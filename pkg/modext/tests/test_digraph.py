"""Tests for bipartite digraphs, the Hall condition and the mutual-reachability pairing."""

from unittest import TestCase

from ddt import data, ddt, unpack

from modext.engine.caps import Caps
from modext.engine.digraph import (
    BipartiteDigraph,
    hall_condition,
    ks_relabel,
    max_bipartite_matching,
    out_neighborhood,
)
from modext.exceptions import CapExceeded, DomainMismatch, UnknownVertex


def shared_target():
    """Two X vertices whose only successor is the same Y vertex."""
    return BipartiteDigraph(
        ["x1", "x2"], ["y1"], [("x1", "y1"), ("x2", "y1"), ("y1", "x1"), ("y1", "x2")]
    )


@ddt
class TestBipartiteDigraph(TestCase):
    """Construction and neighborhoods."""

    @data(
        (["x1", "x1"], ["y1"], []),
        (["x1"], ["x1"], []),
        (["x1", "x2"], ["y1"], [("x1", "x2")]),
    )
    @unpack
    def test_invalid_digraphs(self, xs, ys, edges):
        with self.assertRaises(DomainMismatch):
            BipartiteDigraph(xs, ys, edges)

    def test_unknown_vertex_in_edge(self):
        with self.assertRaises(UnknownVertex):
            BipartiteDigraph(["x1"], ["y1"], [("x1", "y9")])

    def test_out_neighborhood(self):
        D = shared_target()
        self.assertEqual(out_neighborhood(D, {"x1", "x2"}), {"y1"})
        self.assertEqual(out_neighborhood(D, {"y1"}), {"x1", "x2"})
        self.assertEqual(out_neighborhood(D, set()), frozenset())
        with self.assertRaises(UnknownVertex):
            out_neighborhood(D, {"z"})

    def test_str(self):
        self.assertEqual(str(shared_target()), "X x1 x2 Y y1 E x1>y1 x2>y1 y1>x1 y1>x2")

    def test_successors_follow_declaration_order(self):
        self.assertEqual(shared_target().successors("y1"), ["x1", "x2"])


@ddt
class TestHallCondition(TestCase):
    """Both modes and their witnesses."""

    @data("brute", "matching")
    def test_shared_target_fails(self, mode):
        result = hall_condition(shared_target(), mode)
        self.assertFalse(result)
        self.assertEqual(result.witness, {"x1", "x2"})
        self.assertEqual(result.mode, mode)

    @data("brute", "matching")
    def test_two_cycles_hold(self, mode):
        D = BipartiteDigraph(
            ["x1", "x2"], ["y1", "y2"], [("x1", "y1"), ("y1", "x1"), ("x2", "y2"), ("y2", "x2")]
        )
        result = hall_condition(D, mode)
        self.assertTrue(result)
        self.assertIsNone(result.witness)

    @data("brute", "matching")
    def test_y_side_violation(self, mode):
        D = BipartiteDigraph(["x1"], ["y1", "y2"], [("x1", "y1"), ("y1", "x1"), ("y2", "x1")])
        result = hall_condition(D, mode)
        self.assertFalse(result)
        self.assertEqual(result.witness, {"y1", "y2"})

    @data("brute", "matching")
    def test_isolated_vertex(self, mode):
        D = BipartiteDigraph(["x1"], ["y1"], [("y1", "x1")])
        self.assertEqual(hall_condition(D, mode).witness, {"x1"})

    def test_empty_digraph(self):
        D = BipartiteDigraph([], [])
        self.assertTrue(hall_condition(D, "brute"))
        self.assertTrue(hall_condition(D, "matching"))

    def test_brute_force_cap(self):
        with self.assertRaises(CapExceeded):
            hall_condition(shared_target(), "brute", Caps(digraph_brute_force_max_vertices=2))

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            hall_condition(shared_target(), "guess")

    def test_max_bipartite_matching(self):
        """Augmenting paths move x1 off y1 so that x2 can take it."""
        edges = {("x1", "y1"), ("x1", "y2"), ("x2", "y1")}
        self.assertEqual(max_bipartite_matching(["x1", "x2"], ["y1", "y2"], edges), {"x1": "y2", "x2": "y1"})


class TestKSRelabel(TestCase):
    """Pairing by strongly connected components."""

    def test_two_cycles(self):
        D = BipartiteDigraph(
            ["x1", "x2"], ["y1", "y2"], [("x1", "y1"), ("y1", "x1"), ("x2", "y2"), ("y2", "x2")]
        )
        relabeling = ks_relabel(D)
        self.assertTrue(relabeling)
        self.assertEqual(relabeling.pairing, (("x1", "y1"), ("x2", "y2")))

    def test_pairs_inside_one_long_cycle(self):
        """x1 -> y1 -> x2 -> y2 -> x1 is one component; x2 takes y1 through an augmenting path."""
        D = BipartiteDigraph(
            ["x1", "x2"], ["y1", "y2"], [("x1", "y1"), ("y1", "x2"), ("x2", "y2"), ("y2", "x1")]
        )
        relabeling = ks_relabel(D)
        self.assertEqual(relabeling.pairing, (("x1", "y2"), ("x2", "y1")))

    def test_pairing_avoids_one_way_edges(self):
        """x1 -> y2 is not reciprocated, so x1 must pair with y1."""
        D = BipartiteDigraph(
            ["x1", "x2"],
            ["y1", "y2"],
            [("x1", "y2"), ("x1", "y1"), ("y1", "x1"), ("x2", "y2"), ("y2", "x2")],
        )
        self.assertEqual(ks_relabel(D).pairing, (("x1", "y1"), ("x2", "y2")))

    def test_failure_carries_the_hall_witness(self):
        relabeling = ks_relabel(shared_target())
        self.assertFalse(relabeling)
        self.assertEqual(relabeling.pairing, ())
        self.assertEqual(relabeling.witness, {"x1", "x2"})
