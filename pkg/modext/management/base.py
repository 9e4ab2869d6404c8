"""
Shared plumbing for the modext management commands.

Every command builds a report dict, writes it as JSON or text to stdout or to
``--output`` and maps ``ModextError`` to a ``CommandError`` carrying the
error's exit code.
"""

import argparse
import logging
import time
from pathlib import Path
from typing import Any

from django.core.management.base import BaseCommand, CommandError

from modext.engine.caps import Caps
from modext.exceptions import EXIT_INVALID_INPUT, ModextError
from modext.reports import render_text, to_json
from modext.spec_file import ObjectSpecFile, load_spec_file

logger = logging.getLogger(__name__)


class ReportCommand(BaseCommand):
    """Base class for commands that produce a report.

    Subclasses implement ``build_report`` and may override ``after_write`` to
    turn a written report into a nonzero exit code.
    """

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Add the output options shared by every report command.

        Args:
            parser (argparse.ArgumentParser): The Django argument parser instance to configure.
        """
        parser.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="Report format. JSON reports are deterministic and can be re-validated with ext_check --report.",
        )
        parser.add_argument(
            "--output",
            type=str,
            default=None,
            help="Write the report to this path instead of stdout.",
        )
        parser.add_argument(
            "--timings",
            action="store_true",
            help="Include wall-clock timings in the report. Reports with timings are not byte-identical across runs.",
        )

    def build_report(self, caps: Caps, **options) -> dict[str, Any]:
        raise NotImplementedError

    def after_write(self, report: dict[str, Any]) -> None:
        """Hook run after the report has been written; may raise ``CommandError``."""

    def handle(self, *args, **options):
        caps = Caps.from_settings()
        started = time.perf_counter()
        try:
            report = self.build_report(caps, **options)
        except ModextError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        if options["timings"]:
            report["seconds"] = round(time.perf_counter() - started, 3)
        self.write_report(report, options["format"], options["output"])
        self.after_write(report)

    def load(self, path: str, caps: Caps) -> ObjectSpecFile:
        spec = load_spec_file(path, caps)
        logger.debug(f"Loaded {path}: {len(spec.objects)} extensions, {len(spec.lists)} lists")
        return spec

    def write_report(self, report: dict[str, Any], fmt: str, output: str | None) -> None:
        text = to_json(report) if fmt == "json" else render_text(report)
        if output is None:
            self.stdout.write(text, ending="")
            return
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise CommandError(f"Cannot write {output}: {exc.strerror}", returncode=EXIT_INVALID_INPUT) from exc
        self.stderr.write(self.style.SUCCESS(f"Report written to {output}"))
