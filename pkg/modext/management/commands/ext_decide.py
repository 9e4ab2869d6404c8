"""
Django management command deciding whether two direct sums of extensions are isomorphic.

Example usage:
    python manage.py ext_decide objects.ext left right
    python manage.py ext_decide objects.ext left right --method all
    python manage.py ext_decide objects.ext left right --method oracle --format text
"""

import logging

from django.core.management.base import CommandError

from modext.data import DecisionMethod
from modext.engine.decision import applicable_methods, decide
from modext.exceptions import EXIT_THEOREM_VIOLATION, EXIT_VERDICT_FALSE
from modext.management.base import ReportCommand
from modext.reports import decision_report

logger = logging.getLogger(__name__)

METHODS = {
    "parziale": DecisionMethod.PARZIALE,
    "completo": DecisionMethod.COMPLETO,
    "completo-prime": DecisionMethod.COMPLETO_PRIME,
    "oracle": DecisionMethod.BRUTE_FORCE,
}


class Command(ReportCommand):
    """
    Decide whether the direct sums of two declared lists are isomorphic.

    ``LEFT`` and ``RIGHT`` name lists; an extension name stands for the list
    holding only that extension. With ``--method all`` every applicable
    decider runs, including the brute-force oracle, and the report records
    whether they agree.

    Exit status is 0 for an isomorphism, 1 when the sums are not isomorphic
    and 4 when deciders disagree. The report is written in every case.
    """

    help = "Decide isomorphism of two direct sums of extensions by class-preserving bijections."

    def add_arguments(self, parser):
        parser.add_argument("file", type=str, help="Path to the specification file.")
        parser.add_argument("left", type=str, help="Name of the left list.")
        parser.add_argument("right", type=str, help="Name of the right list.")
        parser.add_argument(
            "--method",
            choices=[*METHODS, "all"],
            default="completo-prime",
            help="Decision procedure; 'all' runs every applicable one and checks that they agree.",
        )
        super().add_arguments(parser)

    def build_report(self, caps, **options):
        spec = self.load(options["file"], caps)
        left, right = spec.object_list(options["left"]), spec.object_list(options["right"])
        if options["method"] == "all":
            methods = applicable_methods(left, right)
        else:
            methods = [METHODS[options["method"]]]
        results = {}
        for method in methods:
            results[method] = decide(method, left, right, caps)
            logger.info(f"{method}: {results[method].verdict}")
        return decision_report(spec, options["left"], options["right"], results)

    def after_write(self, report):
        if not report["agree"]:
            verdicts = {method: result["verdict"] for method, result in report["results"].items()}
            raise CommandError(f"Deciders disagree: {verdicts}", returncode=EXIT_THEOREM_VIOLATION)
        if not report["verdict"]:
            raise CommandError("The direct sums are not isomorphic", returncode=EXIT_VERDICT_FALSE)
