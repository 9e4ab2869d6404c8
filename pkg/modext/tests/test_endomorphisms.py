"""Tests for endomorphism rings, their ideals and the derived checks."""

import math
from unittest import TestCase

from ddt import data, ddt, unpack

from modext.data import ClassLabel
from modext.engine.caps import Caps
from modext.engine.endomorphisms import (
    analyze,
    associated_ideal_formula,
    associated_ideal_membership,
    crt_check,
    ideal_inclusions,
    module_type,
    type_bound_check,
    verify_crt,
)
from modext.engine.extensions import ExtMorphism, make_ext
from modext.engine.groups import Group
from modext.exceptions import CapExceeded, ScopeViolation
from modext.selftest import crossed_pair, split_sum


def nonsplit_z4():
    return make_ext(Group((4,)), [(2,)])


@ddt
class TestAnalyze(TestCase):
    """Ring size, ideals, maximality and type."""

    def test_nonsplit_z4(self):
        """All four ideals are the non-units of Z/4 and the ring has type 1."""
        analysis = analyze(nonsplit_z4())
        self.assertEqual(analysis.size, 4)
        self.assertEqual(len({analysis.ideals[label] for label in ClassLabel}), 1)
        self.assertEqual(analysis.ideal_sizes(), {label: 2 for label in ClassLabel})
        self.assertEqual(analysis.type_count, 1)
        self.assertEqual(analysis.maximal_labels, frozenset(ClassLabel))
        self.assertEqual(len(analysis.radical), 2)
        self.assertEqual(len(analysis.automorphisms), 2)
        self.assertTrue(analysis.exhaustive)
        self.assertEqual(analysis.violations, ())

    def test_crossed_extensions_have_type_two(self):
        for X in crossed_pair():
            analysis = analyze(X)
            self.assertEqual(analysis.size, 6)
            self.assertEqual(analysis.type_count, 2)
            self.assertEqual(analysis.ideals[ClassLabel.ML], analysis.ideals[ClassLabel.EL])
            self.assertEqual(analysis.ideals[ClassLabel.MU], analysis.ideals[ClassLabel.EU])
            self.assertNotEqual(analysis.ideals[ClassLabel.ML], analysis.ideals[ClassLabel.MU])

    def test_crossed_ideal_sizes(self):
        """With lower term Z/2 the lower ideals are the even residues and the upper ones the multiples of 3."""
        X, _ = crossed_pair()
        sizes = analyze(X).ideal_sizes()
        self.assertEqual(sizes[ClassLabel.ML], 3)
        self.assertEqual(sizes[ClassLabel.MU], 2)

    @data((2, 2), (2, 4), (4, 2), (2, 3), (3, 9))
    @unpack
    def test_split_sum_ring_size(self, u, v):
        """|E| = |End U| |End V| |Hom(V, U)| for 0 -> U -> U + V -> V -> 0."""
        analysis = analyze(split_sum(u, v).obj)
        self.assertEqual(analysis.size, u * v * math.gcd(u, v))

    def test_identity_and_index(self):
        X = nonsplit_z4()
        analysis = analyze(X)
        identity = ExtMorphism.identity(X)
        self.assertEqual(analysis.index_of(identity), analysis.identity_index)
        self.assertIn(analysis.identity_index, analysis.automorphisms)

    def test_scope(self):
        with self.assertRaises(ScopeViolation):
            analyze(make_ext(Group((4,)), []))

    def test_cap(self):
        X = make_ext(Group((8, 8)), [(1, 0)])
        with self.assertRaises(CapExceeded):
            analyze(X, Caps(max_hom_count=100))

    def test_sampled_pair_checks(self):
        """Above the pair budget the laws are checked on a sample and the analysis says so."""
        X = make_ext(Group((8, 2)), [(0, 1)])
        analysis = analyze(X, Caps(max_pair_checks=50))
        self.assertFalse(analysis.exhaustive)
        self.assertEqual(analysis.violations, ())


@ddt
class TestDerivedChecks(TestCase):
    """Quotients by the maximal ideals, type bounds and associated ideals."""

    def test_crt_on_crossed_extension(self):
        X, _ = crossed_pair()
        check = crt_check(analyze(X))
        self.assertEqual(check.quotient_sizes, (2, 3))
        self.assertEqual(check.radical_quotient_size, 6)
        self.assertTrue(check.division_rings)
        self.assertTrue(check.holds)

    @data(
        ((4,), [(2,)]),
        ((8,), [(4,)]),
        ((2, 2), [(1, 0)]),
        ((4, 2), [(2, 1)]),
        ((9, 3), [(0, 1)]),
    )
    @unpack
    def test_crt_and_type_bound(self, factors, gens):
        X = make_ext(Group(factors), gens)
        self.assertTrue(verify_crt(analyze(X)))
        self.assertTrue(type_bound_check(X))

    @data(((), 0), ((4,), 1), ((3,), 1), ((27,), 1))
    @unpack
    def test_module_type(self, factors, expected):
        self.assertEqual(module_type(Group(factors)), expected)

    def test_module_type_scope(self):
        with self.assertRaises(ScopeViolation):
            module_type(Group((2, 2)))

    def test_ideal_inclusions(self):
        X, _ = crossed_pair()
        inclusions = ideal_inclusions(analyze(X))
        self.assertTrue(inclusions[(ClassLabel.ML, ClassLabel.EL)])
        self.assertTrue(inclusions[(ClassLabel.MU, ClassLabel.EU)])
        self.assertFalse(inclusions[(ClassLabel.ML, ClassLabel.MU)])
        self.assertFalse(inclusions[(ClassLabel.EU, ClassLabel.EL)])

    def test_associated_ideal_of_own_ring(self):
        """On the base object itself the associated ideal is the ideal."""
        X, _ = crossed_pair()
        analysis = analyze(X)
        for label in ClassLabel:
            for index, m in enumerate(analysis.endos):
                expected = index in analysis.ideals[label]
                self.assertEqual(associated_ideal_membership(X, label, m), expected)
                self.assertEqual(associated_ideal_formula(X, label, m), expected)

    def test_associated_ideal_of_other_class(self):
        """Endomorphisms of an object in another class all lie in the associated ideal."""
        X, Y = crossed_pair()
        for m in analyze(Y).endos:
            self.assertTrue(associated_ideal_membership(X, ClassLabel.ML, m))
            self.assertTrue(associated_ideal_formula(X, ClassLabel.ML, m))

    def test_associated_ideal_formula_needs_an_endomorphism(self):
        X, Y = crossed_pair()
        self.assertIsNone(associated_ideal_formula(X, ClassLabel.ML, ExtMorphism.zero(X, Y)))
