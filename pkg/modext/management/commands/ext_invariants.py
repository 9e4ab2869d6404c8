"""
Django management command comparing the four classes of two declared extensions.

Example usage:
    python manage.py ext_invariants objects.ext left right
"""

from modext.management.base import ReportCommand
from modext.reports import invariants_report


class Command(ReportCommand):
    """
    Report, for each of the labels (m,l), (e,l), (m,u) and (e,u), whether the
    two extensions lie in the same class, with the witnessing morphisms in
    both directions.
    """

    help = "Compare the monogeny and epigeny classes of two extensions on both end terms."

    def add_arguments(self, parser):
        parser.add_argument("file", type=str, help="Path to the specification file.")
        parser.add_argument("first", type=str, help="Name of the first extension.")
        parser.add_argument("second", type=str, help="Name of the second extension.")
        super().add_arguments(parser)

    def build_report(self, caps, **options):
        spec = self.load(options["file"], caps)
        return invariants_report(spec, options["first"], options["second"], caps)
