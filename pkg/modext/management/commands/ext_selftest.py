"""
Django management command running the verification suite.

Example usage:
    python manage.py ext_selftest
    python manage.py ext_selftest --max-order 36 --lemma-max-order 24 --timings --format text
"""

from django.core.management.base import CommandError

from modext.exceptions import EXIT_THEOREM_VIOLATION
from modext.management.base import ReportCommand
from modext.management.commands.ext_corpus import prime_list
from modext.selftest import SelftestOptions, run_selftest


class Command(ReportCommand):
    """
    Run every verification family: endomorphism rings over the corpus,
    agreement of the deciders with the brute-force oracle, the crossed pair,
    split sums, the exchange family, exhaustive digraphs and the class
    lemmas. Exits with status 4 if any check fails.
    """

    help = "Run the verification suite over a generated corpus and report every failed check."

    def add_arguments(self, parser):
        defaults = SelftestOptions()
        parser.add_argument("--max-order", type=int, default=defaults.max_order, help="Corpus bound for ring checks.")
        parser.add_argument(
            "--lemma-max-order",
            type=int,
            default=defaults.lemma_max_order,
            help="Corpus bound for oracle agreement and class lemmas.",
        )
        parser.add_argument("--primes", type=prime_list, default=defaults.primes, help="Comma-separated primes.")
        parser.add_argument(
            "--max-pairs", type=int, default=defaults.max_pairs, help="Pairs sampled per family beyond this many."
        )
        parser.add_argument(
            "--digraph-size", type=int, default=defaults.digraph_size, help="Side size of the exhaustive digraphs."
        )
        parser.add_argument("--seed", type=int, default=defaults.seed, help="Seed for sampling.")
        super().add_arguments(parser)

    def build_report(self, caps, **options):
        selftest_options = SelftestOptions(
            max_order=options["max_order"],
            lemma_max_order=options["lemma_max_order"],
            primes=tuple(options["primes"]),
            max_pairs=options["max_pairs"],
            digraph_size=options["digraph_size"],
            seed=options["seed"],
        )
        return run_selftest(selftest_options, caps).as_dict(timings=options["timings"])

    def after_write(self, report):
        failed = [check["name"] for check in report["checks"] if check["failed"]]
        if failed:
            raise CommandError(f"Failed checks: {', '.join(failed)}", returncode=EXIT_THEOREM_VIOLATION)
        sampled = [check["name"] for check in report["checks"] if not check["exhaustive"]]
        if sampled:
            self.stderr.write(self.style.WARNING(f"Checked on samples only: {', '.join(sampled)}"))
        self.stderr.write(self.style.SUCCESS(f"{len(report['checks'])} check families passed."))
