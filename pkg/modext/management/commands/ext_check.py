"""
Django management command to check a specification file, or re-validate a saved report against it.

Example usage:
    python manage.py ext_check objects.ext
    python manage.py ext_check objects.ext --format text
    python manage.py ext_check objects.ext --report decide.json
"""

import json
from pathlib import Path

from django.core.management.base import CommandError

from modext.exceptions import EXIT_INVALID_INPUT
from modext.management.base import ReportCommand
from modext.reports import check_report, revalidate_report


class Command(ReportCommand):
    """
    Parse and validate every declaration of a specification file.

    The report lists each extension with its canonical middle group, the
    types of its end terms and its scope flags. With ``--report`` the command
    instead re-checks every verdict and witness of a saved JSON report and
    exits with status 2 if any of them fails.
    """

    help = "Parse a specification file and report scope flags of every extension, or re-validate a saved report."

    def add_arguments(self, parser):
        parser.add_argument("file", type=str, help="Path to the specification file.")
        parser.add_argument(
            "--report",
            type=str,
            default=None,
            help="Path to a JSON report produced by another ext_* command, to re-validate against the file.",
        )
        super().add_arguments(parser)

    def build_report(self, caps, **options):
        spec = self.load(options["file"], caps)
        if options["report"] is None:
            return check_report(spec, caps)
        try:
            saved = json.loads(Path(options["report"]).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise CommandError(f"Cannot read report {options['report']}: {exc}", returncode=EXIT_INVALID_INPUT) from exc
        problems = revalidate_report(saved, spec, caps)
        return {
            "kind": "revalidation",
            "report": options["report"],
            "report_kind": saved.get("kind"),
            "problems": problems,
            "ok": not problems,
        }

    def after_write(self, report):
        if report["kind"] == "revalidation" and not report["ok"]:
            problems = len(report["problems"])
            raise CommandError(f"{problems} problems in {report['report']}", returncode=EXIT_INVALID_INPUT)
