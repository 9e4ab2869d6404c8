"""Tests for the package metadata read by setup.py."""

import re
from pathlib import Path
from unittest import TestCase

import modext


class TestPackage(TestCase):
    """The package module holds its docstring and version only."""

    def test_version_is_readable_by_setup(self):
        source = Path(modext.__file__).read_text(encoding="utf8")
        found = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]", source, re.M)
        self.assertEqual(found.group(1), modext.__version__)

    def test_no_path_constants(self):
        self.assertFalse(hasattr(modext, "ROOT_DIRECTORY"))
