"""
Tests for the modext Django management commands.
"""

import io
import json
import tempfile
from pathlib import Path
from unittest import TestCase
from unittest.mock import patch

from ddt import data, ddt, unpack
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import override_settings

from modext.data import DecisionMethod
from modext.engine.decision import DecisionReport
from modext.engine.decision import applicable_methods
from modext.spec_file import parse_spec_file

SPEC = """\
ext nonsplit B 4 A (2)
ext split B 2 2 A (1,0)
ext crossed B 6 A (3)
ext crossed_other B 6 A (2)
ext lower B 2 A (1)
ext upper B 3 A
list pair nonsplit split
list swapped split nonsplit
list parts lower upper
digraph cycle X x1 x2 Y y1 y2 E x1>y1 y1>x2 x2>y2 y2>x1
digraph shared X x1 x2 Y y1 E x1>y1 x2>y1 y1>x1 y1>x2
"""


class CommandTestCase(TestCase):
    """Writes the specification file to a temporary directory."""

    def setUp(self):
        super().setUp()
        self.buffer = io.StringIO()
        self.errors = io.StringIO()
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.path = Path(self.directory.name) / "objects.ext"
        self.path.write_text(SPEC, encoding="utf-8")

    def run_command(self, name, *args, **options):
        call_command(name, *args, stdout=self.buffer, stderr=self.errors, **options)
        return self.buffer.getvalue()

    def run_json(self, name, *args, **options):
        return json.loads(self.run_command(name, *args, **options))

    def assert_exit(self, returncode, name, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(name, *args, **options)
        self.assertEqual(ctx.exception.returncode, returncode, str(ctx.exception))
        return ctx.exception


class TestExtCheck(CommandTestCase):
    """Checking specification files and re-validating stored reports."""

    def test_check(self):
        report = self.run_json("ext_check", str(self.path))
        self.assertEqual(report["kind"], "check")
        self.assertEqual(len(report["objects"]), 6)

    def test_text_format(self):
        output = self.run_command("ext_check", str(self.path), format="text")
        self.assertIn("kind: check", output)
        self.assertIn("name: nonsplit", output)

    def test_missing_file(self):
        self.assert_exit(2, "ext_check", str(Path(self.directory.name) / "missing.ext"))

    def test_syntax_error(self):
        self.path.write_text("ext n B 4 A 2\n", encoding="utf-8")
        error = self.assert_exit(2, "ext_check", str(self.path))
        self.assertIn("1:13:", str(error))

    def test_revalidate_stored_report(self):
        stored = Path(self.directory.name) / "decide.json"
        self.run_command("ext_decide", str(self.path), "pair", "swapped", method="all", output=str(stored))
        self.assertIn("Report written to", self.errors.getvalue())
        self.buffer = io.StringIO()
        report = self.run_json("ext_check", str(self.path), report=str(stored))
        self.assertEqual(report["report_kind"], "decide")
        self.assertTrue(report["ok"])

    def test_revalidate_tampered_report(self):
        stored = Path(self.directory.name) / "endoring.json"
        self.run_command("ext_endoring", str(self.path), "nonsplit", output=str(stored))
        saved = json.loads(stored.read_text(encoding="utf-8"))
        saved["type"] = 3
        stored.write_text(json.dumps(saved), encoding="utf-8")
        self.assert_exit(2, "ext_check", str(self.path), report=str(stored))
        self.assertFalse(json.loads(self.buffer.getvalue())["ok"])

    def test_unreadable_report(self):
        stored = Path(self.directory.name) / "broken.json"
        stored.write_text("{not json", encoding="utf-8")
        self.assert_exit(2, "ext_check", str(self.path), report=str(stored))


class TestExtInvariantsAndEndoring(CommandTestCase):
    """Class comparisons and ring analysis of declared extensions."""

    def test_invariants(self):
        report = self.run_json("ext_invariants", str(self.path), "nonsplit", "nonsplit")
        self.assertTrue(report["isomorphic"])
        self.assertEqual(report["comparisons"][0]["forward"], [[1]])

    def test_unknown_name(self):
        error = self.assert_exit(2, "ext_invariants", str(self.path), "nonsplit", "missing")
        self.assertIn("missing", str(error))

    def test_endoring(self):
        report = self.run_json("ext_endoring", str(self.path), "crossed")
        self.assertEqual(report["size"], 6)
        self.assertEqual(report["type"], 2)
        self.assertEqual(report["crt"]["quotient_sizes"], [2, 3])
        self.assertTrue(report["exhaustive"])

    @override_settings(MODEXT_MAX_PAIR_CHECKS=1)
    def test_endoring_on_sampled_pairs(self):
        report = self.run_json("ext_endoring", str(self.path), "crossed")
        self.assertFalse(report["exhaustive"])
        self.assertEqual(report["size"], 6)

    def test_endoring_text_and_timings(self):
        output = self.run_command("ext_endoring", str(self.path), "nonsplit", format="text", timings=True)
        self.assertIn("size: 4", output)
        self.assertIn("seconds:", output)

    def test_endoring_out_of_scope(self):
        self.assert_exit(2, "ext_endoring", str(self.path), "upper")

    @override_settings(MODEXT_MAX_HOM_COUNT=2)
    def test_cap_exceeded(self):
        self.assert_exit(3, "ext_endoring", str(self.path), "nonsplit")


@ddt
class TestExtDecide(CommandTestCase):
    """Decisions, exit codes and agreement checks."""

    @data("parziale", "completo", "completo-prime", "oracle", "all")
    def test_isomorphic_lists(self, method):
        report = self.run_json("ext_decide", str(self.path), "pair", "swapped", method=method)
        self.assertTrue(report["verdict"])
        self.assertTrue(report["agree"])

    def test_all_runs_every_applicable_method(self):
        report = self.run_json("ext_decide", str(self.path), "pair", "swapped", method="all")
        self.assertEqual(set(report["results"]), {"parziale", "completo", "completo_prime", "brute_force"})

    @data("parziale", "completo", "completo-prime", "oracle")
    def test_non_isomorphic(self, method):
        self.assert_exit(1, "ext_decide", str(self.path), "crossed", "crossed_other", method=method)
        self.assertFalse(json.loads(self.buffer.getvalue())["verdict"])

    def test_parts_against_their_sum(self):
        report = self.run_json("ext_decide", str(self.path), "parts", "crossed", method="all")
        self.assertEqual(set(report["results"]), {"completo_prime", "brute_force"})
        self.assertTrue(report["verdict"])

    def test_scope_violation(self):
        self.assert_exit(2, "ext_decide", str(self.path), "parts", "crossed", method="completo")

    @override_settings(MODEXT_ORACLE_MAX_ORDER=8)
    def test_oracle_cap(self):
        self.assert_exit(3, "ext_decide", str(self.path), "pair", "swapped", method="oracle")

    def test_disagreement(self):
        def rigged(method, left, right, caps=None):
            return DecisionReport(verdict=method == DecisionMethod.BRUTE_FORCE, method=method)

        with patch("modext.management.commands.ext_decide.decide", side_effect=rigged):
            error = self.assert_exit(4, "ext_decide", str(self.path), "pair", "swapped", method="all")
        self.assertIn("disagree", str(error))

    @data(
        (["nonsplit", "split"], ["parziale", "completo", "completo_prime", "brute_force"]),
        (["lower", "crossed"], ["completo_prime", "brute_force"]),
    )
    @unpack
    def test_applicable_methods(self, names, expected):
        spec = parse_spec_file(SPEC)
        objects = [spec.object(name) for name in names]
        self.assertEqual([str(m) for m in applicable_methods(objects, [])], expected)


class TestExtDigraph(CommandTestCase):
    """Hall condition and pairing of declared digraphs."""

    def test_cycle(self):
        report = self.run_json("ext_digraph", str(self.path), "cycle")
        self.assertTrue(report["hall_matching"]["holds"])
        self.assertEqual(report["pairing"], [["x1", "y2"], ["x2", "y1"]])

    def test_shared_target(self):
        report = self.run_json("ext_digraph", str(self.path), "shared")
        self.assertEqual(report["witness"], ["x1", "x2"])
        self.assertTrue(report["agree"])

    def test_skip_brute_force(self):
        report = self.run_json("ext_digraph", str(self.path), "cycle", skip_brute_force=True)
        self.assertIsNone(report["hall_brute"])

    def test_unknown_digraph(self):
        self.assert_exit(2, "ext_digraph", str(self.path), "nonsplit")


class TestExtCorpus(CommandTestCase):
    """Writing the corpus as a specification file."""

    def test_small_corpus(self):
        output = self.run_command("ext_corpus", max_order=6)
        self.assertTrue(output.startswith("# corpus --max-order 6 --primes 2,3\n"))
        self.assertIn("ext B4_A2_C2_1 B 4 A (2)\n", output)
        self.assertIn("ext B4_A0_C4_1 B 4 A\n", output)
        self.assertIn("ext B4_A4_C0_1 B 4 A (1)\n", output)
        self.assertIn(
            "list corpus B2_A0_C2_1 B2_A2_C0_1 B3_A0_C3_1 B3_A3_C0_1 B2x2_A2_C2_1"
            " B4_A0_C4_1 B4_A2_C2_1 B4_A4_C0_1 B2x3_A2_C3_1 B2x3_A3_C2_1\n",
            output,
        )
        self.assertEqual(len(parse_spec_file(output).objects), 10)

    def test_output_is_deterministic(self):
        first = self.run_command("ext_corpus", "--max-order", "16", "--primes", "2", "--sample", "3", "--seed", "5")
        self.buffer = io.StringIO()
        second = self.run_command("ext_corpus", "--max-order", "16", "--primes", "2", "--sample", "3", "--seed", "5")
        self.assertEqual(first, second)
        self.assertIn("# sample 3 with seed 5\n", first)

    def test_output_file(self):
        target = Path(self.directory.name) / "corpus.ext"
        self.run_command("ext_corpus", max_order=6, output=str(target))
        self.assertIn("10 extensions written", self.errors.getvalue())
        self.assertEqual(len(parse_spec_file(target.read_text(encoding="utf-8")).lists["corpus"]), 10)

    def test_invalid_max_order(self):
        self.assert_exit(2, "ext_corpus", max_order=0)

    def test_invalid_primes(self):
        with self.assertRaises(CommandError):
            self.run_command("ext_corpus", "--primes", "2,4")


class TestExtSelftest(CommandTestCase):
    """The verification suite with small bounds."""

    def test_small_run_passes(self):
        report = self.run_json(
            "ext_selftest",
            "--max-order", "8",
            "--lemma-max-order", "6",
            "--max-pairs", "30",
            "--digraph-size", "2",
            "--timings",
        )
        self.assertTrue(report["ok"])
        self.assertTrue(all("seconds" in check for check in report["checks"]))
        self.assertIn("check families passed", self.errors.getvalue())

    def test_failed_check_exits_with_four(self):
        failing = {"kind": "selftest", "ok": False, "checks": [{"name": "crossed pair", "failed": 1}]}
        with patch("modext.management.commands.ext_selftest.run_selftest") as run:
            run.return_value.as_dict.return_value = failing
            error = self.assert_exit(4, "ext_selftest")
        self.assertIn("crossed pair", str(error))

    def test_sampled_checks_are_named(self):
        sampled = {
            "kind": "selftest",
            "ok": True,
            "checks": [
                {"name": "class collapse", "failed": 0, "exhaustive": True},
                {"name": "associated ideals", "failed": 0, "exhaustive": False},
            ],
        }
        with patch("modext.management.commands.ext_selftest.run_selftest") as run:
            run.return_value.as_dict.return_value = sampled
            self.run_command("ext_selftest")
        self.assertIn("Checked on samples only: associated ideals", self.errors.getvalue())
        self.assertIn("2 check families passed", self.errors.getvalue())
