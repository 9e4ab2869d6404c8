"""Tests for corpus generation."""

from unittest import TestCase

from ddt import data, ddt, unpack

from modext.corpus import candidate_groups, degenerate_objects, generate_corpus, in_scope_objects, in_u_objects
from modext.engine.groups import Group
from modext.engine.oracle import brute_force_iso


@ddt
class TestCandidateGroups(TestCase):
    """Middle groups with at most two canonical factors."""

    @data(
        (4, (2,), [(2,), (2, 2), (4,)]),
        (6, (2, 3), [(2,), (3,), (2, 2), (4,), (2, 3)]),
        (9, (3,), [(3,), (3, 3), (9,)]),
    )
    @unpack
    def test_candidate_groups(self, max_order, primes, expected):
        self.assertEqual([G.factors for G in candidate_groups(max_order, primes)], expected)

    def test_in_u_objects_of_klein(self):
        """The three lines of the Klein group give three objects."""
        objects = list(in_u_objects(Group((2, 2))))
        self.assertEqual(len(objects), 3)
        self.assertTrue(all(X.in_u for X in objects))

    def test_in_u_objects_skips_the_whole_group(self):
        self.assertEqual(list(in_u_objects(Group((2,)))), [])

    def test_degenerate_objects_of_a_cyclic_group(self):
        upper, lower = degenerate_objects(Group((4,)))
        self.assertTrue(upper.in_u0)
        self.assertTrue(upper.a_type.is_zero)
        self.assertEqual(upper.c_type.factors, (4,))
        self.assertTrue(lower.in_u_upper0)
        self.assertTrue(lower.c_type.is_zero)
        self.assertEqual(lower.a_type.factors, (4,))

    def test_degenerate_objects_need_a_uniserial_group(self):
        self.assertEqual(list(degenerate_objects(Group((2, 2)))), [])

    def test_in_scope_objects_of_a_cyclic_group(self):
        objects = list(in_scope_objects(Group((4,))))
        self.assertEqual(len(objects), 3)
        self.assertEqual(sum(X.in_u for X in objects), 1)


class TestGenerateCorpus(TestCase):
    """Naming, deduplication and sampling."""

    def test_small_corpus(self):
        names = [entry.name for entry in generate_corpus(6)]
        self.assertEqual(
            names,
            [
                "B2_A0_C2_1",
                "B2_A2_C0_1",
                "B3_A0_C3_1",
                "B3_A3_C0_1",
                "B2x2_A2_C2_1",
                "B4_A0_C4_1",
                "B4_A2_C2_1",
                "B4_A4_C0_1",
                "B2x3_A2_C3_1",
                "B2x3_A3_C2_1",
            ],
        )

    def test_entries_are_pairwise_non_isomorphic(self):
        entries = generate_corpus(16, primes=(2,))
        self.assertTrue(all(entry.obj.in_scope and not entry.obj.is_zero for entry in entries))
        self.assertTrue(any(entry.obj.in_u0 for entry in entries))
        self.assertTrue(any(entry.obj.in_u_upper0 for entry in entries))
        for i, first in enumerate(entries):
            for second in entries[i + 1 :]:
                self.assertFalse(brute_force_iso([first.obj], [second.obj]))

    def test_non_prime(self):
        with self.assertRaises(ValueError):
            generate_corpus(8, primes=(2, 4))

    def test_sample_is_deterministic_and_ordered(self):
        full = [entry.name for entry in generate_corpus(16, primes=(2,))]
        sampled = [entry.name for entry in generate_corpus(16, primes=(2,), seed=7, sample=3)]
        self.assertEqual(len(sampled), 3)
        self.assertEqual(sampled, [name for name in full if name in sampled])
        self.assertEqual(sampled, [entry.name for entry in generate_corpus(16, primes=(2,), seed=7, sample=3)])

    def test_sample_larger_than_corpus(self):
        self.assertEqual(len(generate_corpus(6, sample=100)), 10)
