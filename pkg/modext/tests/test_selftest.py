"""Tests for the verification suite and its fixed families."""

from unittest import TestCase

from modext.corpus import generate_corpus
from modext.engine.caps import Caps
from modext.selftest import (
    FAILURES_KEPT,
    CheckResult,
    SelftestOptions,
    check_class_lemmas,
    check_crossed_pair,
    check_digraphs,
    check_endomorphism_rings,
    check_exchange_family,
    check_oracle_agreement,
    check_split_sums,
    crossed_pair,
    exchange_family,
    lemma_objects,
    run_selftest,
    split_sum,
)


class TestFamilies(TestCase):
    """The fixed instances the suite is built on."""

    def test_crossed_pair(self):
        X, Y = crossed_pair()
        self.assertEqual((X.a_type.factors, X.c_type.factors), ((2,), (3,)))
        self.assertEqual((Y.a_type.factors, Y.c_type.factors), ((3,), (2,)))

    def test_exchange_family(self):
        left, right = exchange_family()
        self.assertEqual([X.B.factors for X in left], [(2, 3), (2, 3)])
        self.assertEqual([Y.B.factors for Y in right], [(2, 2), (3, 3)])

    def test_split_sum(self):
        S = split_sum(2, 4)
        self.assertEqual(S.obj.B.factors, (2, 4))
        self.assertEqual(S.obj.a_type.factors, (2,))
        self.assertEqual(S.obj.c_type.factors, (4,))


class TestCheckResult(TestCase):
    """Counting and truncation of failures."""

    def test_record(self):
        result = CheckResult("demo")
        result.record(True, "unused")
        result.record(False, lambda: "lazy")
        self.assertEqual((result.checks, result.failed, result.failures), (2, 1, ["lazy"]))
        self.assertFalse(result.ok)

    def test_failures_are_truncated(self):
        result = CheckResult("demo")
        for index in range(FAILURES_KEPT + 5):
            result.record(False, str(index))
        self.assertEqual(result.failed, FAILURES_KEPT + 5)
        self.assertEqual(len(result.failures), FAILURES_KEPT)

    def test_exhaustive_by_default(self):
        self.assertTrue(CheckResult("demo").exhaustive)


class TestChecks(TestCase):
    """Individual families pass on a correct engine."""

    def test_fixed_families(self):
        caps = Caps()
        for result in (check_crossed_pair(caps), check_split_sums(caps), check_exchange_family(caps)):
            self.assertTrue(result.ok, result.failures)
            self.assertGreater(result.checks, 0)

    def test_digraphs(self):
        result = check_digraphs(2, Caps())
        self.assertTrue(result.ok, result.failures)
        self.assertGreater(result.checks, 0)

    def test_endomorphism_rings_on_sampled_pairs(self):
        X, _ = crossed_pair()
        full = check_endomorphism_rings([X], Caps())
        sampled = check_endomorphism_rings([X], Caps(max_pair_checks=1))
        self.assertTrue(full.exhaustive)
        self.assertFalse(sampled.exhaustive)
        self.assertTrue(sampled.ok, sampled.failures)

    def test_oracle_agreement_with_zero_end_terms(self):
        objects = [entry.obj for entry in generate_corpus(4, primes=(2,))]
        self.assertTrue(any(X.in_u0 for X in objects))
        self.assertTrue(any(X.in_u_upper0 for X in objects))
        result = check_oracle_agreement(objects, SelftestOptions(max_pairs=500), Caps())
        self.assertTrue(result.ok, result.failures)
        self.assertGreater(result.checks, 0)

    def test_class_lemmas(self):
        caps = Caps()
        options = SelftestOptions(max_pairs=500)
        results = {result.name: result for result in check_class_lemmas(lemma_objects(6, (2, 3), caps), options, caps)}
        for result in results.values():
            self.assertTrue(result.ok, (result.name, result.failures))
        for name in ("class collapse", "associated ideals", "isomorphism by classes"):
            self.assertGreater(results[name].checks, 0, name)
        self.assertTrue(results["associated ideals"].exhaustive)

    def test_small_suite(self):
        options = SelftestOptions(max_order=8, lemma_max_order=6, max_pairs=30, digraph_size=2)
        report = run_selftest(options)
        self.assertTrue(report.ok, [r.failures for r in report.results if not r.ok])
        as_dict = report.as_dict()
        self.assertEqual(as_dict["kind"], "selftest")
        self.assertIn("class collapse", [check["name"] for check in as_dict["checks"]])
        self.assertTrue(all("exhaustive" in check for check in as_dict["checks"]))
        self.assertNotIn("seconds", as_dict["checks"][0])
        self.assertIn("seconds", report.as_dict(timings=True)["checks"][0])
