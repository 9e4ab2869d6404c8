"""
Django management command analysing the endomorphism ring of a declared extension.

Example usage:
    python manage.py ext_endoring objects.ext crossed
"""

from django.core.management.base import CommandError

from modext.exceptions import EXIT_THEOREM_VIOLATION
from modext.management.base import ReportCommand
from modext.reports import endoring_report


class Command(ReportCommand):
    """
    Enumerate the endomorphism ring of an extension with uniserial end terms
    and report its four ideals, their maximality, the radical, the type and
    the quotient check.

    Exits with status 4, after writing the report, if any guaranteed property
    fails on the object.
    """

    help = "Report the endomorphism ring, its four ideals and its type for one extension."

    def add_arguments(self, parser):
        parser.add_argument("file", type=str, help="Path to the specification file.")
        parser.add_argument("name", type=str, help="Name of the extension.")
        super().add_arguments(parser)

    def build_report(self, caps, **options):
        spec = self.load(options["file"], caps)
        return endoring_report(spec, options["name"], caps)

    def after_write(self, report):
        failed = list(report["violations"])
        if not report["crt"]["holds"]:
            failed.append("quotient by the radical is not the product of the maximal quotients")
        if not report["type_bound"]["holds"]:
            failed.append(f"type {report['type']} exceeds the bound {report['type_bound']['bound']}")
        if failed:
            raise CommandError("; ".join(failed), returncode=EXIT_THEOREM_VIOLATION)
