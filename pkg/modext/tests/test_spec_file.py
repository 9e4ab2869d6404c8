"""Tests for reading and writing specification files."""

import tempfile
from pathlib import Path
from unittest import TestCase

from ddt import data, ddt, unpack

from modext.engine.extensions import make_ext
from modext.engine.groups import Group
from modext.exceptions import ScopeViolation, SpecFileError
from modext.spec_file import dump_spec_file, ext_line, load_spec_file, parse_spec_file

SAMPLE = """\
# the non-split extension of Z/2 by Z/2
ext nonsplit B 4 A (2)
ext split B 2 2 A (1,0)   # split
ext crossed B 6 A (3)

list pair nonsplit split
digraph d X x1 x2 Y y1 E x1>y1 x2>y1 y1>x1
"""


class TestParse(TestCase):
    """Declarations of extensions, lists and digraphs."""

    def test_sample(self):
        spec = parse_spec_file(SAMPLE)
        self.assertEqual(list(spec.objects), ["nonsplit", "split", "crossed"])
        self.assertEqual(spec.object("nonsplit").B.factors, (4,))
        self.assertEqual(spec.object("nonsplit").a_type.factors, (2,))
        self.assertEqual(spec.lists["pair"], ("nonsplit", "split"))
        self.assertEqual(spec.digraph("d").X, ("x1", "x2"))
        self.assertEqual(spec.declarations["split"].line, 3)
        self.assertEqual(spec.declarations["split"].generators, ((1, 0),))

    def test_coordinates_follow_the_chinese_remainder_theorem(self):
        """3 in Z/6 has order 2, so A is Z/2 and C is Z/3."""
        X = parse_spec_file("ext n B 6 A (3)").object("n")
        self.assertEqual(X.B.factors, (2, 3))
        self.assertEqual(X.a_type.factors, (2,))
        self.assertEqual(X.c_type.factors, (3,))

    def test_zero_object(self):
        X = parse_spec_file("ext z B A").object("z")
        self.assertTrue(X.is_zero)

    def test_empty_and_comment_only_files(self):
        self.assertEqual(parse_spec_file("").objects, {})
        self.assertEqual(parse_spec_file("# nothing\n\n   # here\n").objects, {})

    def test_object_list_lookup(self):
        spec = parse_spec_file(SAMPLE)
        self.assertEqual(len(spec.object_list("pair")), 2)
        self.assertEqual(spec.object_list("crossed"), [spec.object("crossed")])
        with self.assertRaises(SpecFileError):
            spec.object_list("missing")
        with self.assertRaises(SpecFileError):
            spec.object("pair")
        with self.assertRaises(SpecFileError):
            spec.digraph("nonsplit")


@ddt
class TestErrors(TestCase):
    """Errors carry the line and column of the offending token."""

    @data(
        ("ext n B 4 A 2", "1:13:"),
        ("group n B 4", "1:1:"),
        ("ext n B 4 A (2)\next n B 2 A", "2:5:"),
        ("ext n B 4 A (2)\nlist l n m", "2:10:"),
        ("ext n B 4", "1:1:"),
        ("ext n B x A", "1:9:"),
        ("ext n B 4 2 A (1)", "1:15:"),
        ("ext x B 4 A (7)", "1:13:"),
        ("ext x B 2 3 A (1,3)", "1:15:"),
        ("ext 9n B 4 A", "1:5:"),
        ("digraph d X x1 E x1>y1", "1:1:"),
        ("digraph d X x1 Y y1 E x1-y1", "1:23:"),
    )
    @unpack
    def test_syntax_errors(self, text, location):
        with self.assertRaises(SpecFileError) as ctx:
            parse_spec_file(text)
        self.assertTrue(str(ctx.exception).startswith(location), str(ctx.exception))

    def test_non_uniserial_quotient(self):
        with self.assertRaises(ScopeViolation) as ctx:
            parse_spec_file("ext k B 2 2 A")
        self.assertTrue(str(ctx.exception).startswith("1:5:"))

    def test_line_and_column_attributes(self):
        with self.assertRaises(SpecFileError) as ctx:
            parse_spec_file("\n\next n B 4 A 2")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 13))

    def test_missing_file(self):
        with self.assertRaises(SpecFileError):
            load_spec_file("/nonexistent/objects.ext")


class TestWrite(TestCase):
    """Rendering declarations back to text."""

    def test_ext_line(self):
        self.assertEqual(ext_line("n", make_ext(Group((4,)), [(2,)])), "ext n B 4 A (2)")
        self.assertEqual(ext_line("u", make_ext(Group((4,)), [])), "ext u B 4 A")

    def test_dump_and_load(self):
        original = parse_spec_file(SAMPLE)
        text = dump_spec_file(
            original.objects.items(),
            original.lists.items(),
            original.digraphs.items(),
            header=["regenerated"],
        )
        self.assertTrue(text.startswith("# regenerated\n"))
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "objects.ext"
            path.write_text(text, encoding="utf-8")
            reloaded = load_spec_file(path)
        self.assertEqual(list(reloaded.objects), list(original.objects))
        for name, X in original.objects.items():
            Y = reloaded.object(name)
            self.assertEqual(Y.B, X.B)
            self.assertEqual(Y.A.elements, X.A.elements)
        self.assertEqual(reloaded.lists, original.lists)
        self.assertEqual(str(reloaded.digraph("d")), str(original.digraph("d")))
