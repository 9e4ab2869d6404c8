"""Tests for the brute-force isomorphism oracle."""

from unittest import TestCase

from ddt import data, ddt, unpack

from modext.engine.caps import Caps
from modext.engine.extensions import build_ext, invert, is_iso_in_E, make_ext
from modext.engine.groups import Group, subgroup_generated
from modext.engine.oracle import brute_force_iso
from modext.exceptions import CapExceeded
from modext.selftest import crossed_pair, exchange_family


def on(factors, *gens):
    return make_ext(Group(factors), list(gens))


@ddt
class TestBruteForceIso(TestCase):
    """Verdicts, witnesses and early exits."""

    @data(
        ((4,), (2,)),
        ((2, 3), (1, 0)),
        ((4, 2), (2, 1)),
    )
    @unpack
    def test_object_is_isomorphic_to_itself(self, factors, gen):
        X = on(factors, gen)
        result = brute_force_iso([X], [X])
        self.assertTrue(result)
        self.assertTrue(is_iso_in_E(result.isomorphism))
        self.assertGreater(result.nodes, 0)

    @data(
        ((2, 2), (1, 0), (0, 1)),
        ((2, 2), (1, 0), (1, 1)),
        ((4, 2), (0, 1), (2, 1)),
        ((8, 2), (0, 1), (4, 1)),
    )
    @unpack
    def test_isomorphic_presentations(self, factors, first, second):
        """Different subgroups related by an automorphism of the middle group."""
        X, Y = on(factors, first), on(factors, second)
        result = brute_force_iso([X], [Y])
        self.assertTrue(result)
        iso = result.isomorphism
        self.assertEqual({iso.f(a) for a in X.A.elements}, set(Y.A.elements))

    def test_isomorphism_inverts(self):
        X, Y = on((4, 2), (0, 1)), on((4, 2), (2, 1))
        iso = brute_force_iso([X], [Y]).isomorphism
        self.assertTrue(is_iso_in_E(invert(iso)))

    def test_different_middle_groups(self):
        result = brute_force_iso([on((4,), (2,))], [on((2, 2), (1, 0))])
        self.assertFalse(result)
        self.assertIsNone(result.isomorphism)
        self.assertIn("middle groups", result.reason)
        self.assertEqual(result.nodes, 0)

    def test_different_lower_terms(self):
        X, Y = crossed_pair()
        result = brute_force_iso([X], [Y])
        self.assertFalse(result)
        self.assertIn("lower terms", result.reason)

    def test_different_upper_terms(self):
        B = Group((4, 2))
        X = build_ext(B, subgroup_generated(B, [(2, 0)]))
        Y = build_ext(B, subgroup_generated(B, [(0, 1)]))
        result = brute_force_iso([X], [Y])
        self.assertFalse(result)
        self.assertIn("upper terms", result.reason)

    def test_exchange_family(self):
        """Pairwise non-isomorphic summands with isomorphic sums."""
        left, right = exchange_family()
        result = brute_force_iso(left, right)
        self.assertTrue(result)
        self.assertEqual(result.isomorphism.source, result.left_sum.obj)
        self.assertEqual(result.isomorphism.target, result.right_sum.obj)
        self.assertTrue(is_iso_in_E(result.isomorphism))
        for X in left:
            for Y in right:
                self.assertFalse(brute_force_iso([X], [Y]))

    def test_order_of_summands_does_not_matter(self):
        X, Y = on((4,), (2,)), on((2, 2), (1, 0))
        self.assertTrue(brute_force_iso([X, Y], [Y, X]))

    def test_direct_sum_cap(self):
        X = on((2, 3), (1, 0))
        with self.assertRaises(CapExceeded):
            brute_force_iso([X, X], [X, X], Caps(oracle_max_order=20))

    def test_node_cap(self):
        X = on((4, 2), (0, 1))
        with self.assertRaises(CapExceeded):
            brute_force_iso([X], [X], Caps(oracle_max_nodes=1))
