"""
Django management command writing the corpus of in-scope extensions as a specification file.

Example usage:
    python manage.py ext_corpus --max-order 36
    python manage.py ext_corpus --max-order 144 --primes 2,3 --output corpus.ext
    python manage.py ext_corpus --max-order 144 --sample 20 --seed 7
"""

import argparse
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from sympy import isprime

from modext.corpus import generate_corpus
from modext.engine.caps import Caps
from modext.exceptions import EXIT_INVALID_INPUT, ModextError
from modext.spec_file import dump_spec_file


def prime_list(value: str) -> tuple[int, ...]:
    """Parse a comma-separated list of primes for ``--primes``."""
    try:
        primes = tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {value!r}") from None
    if not primes or not all(isprime(p) for p in primes):
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {value!r}")
    return primes


class Command(BaseCommand):
    """
    Generate, up to isomorphism, every nonzero extension whose end terms are
    each zero or uniserial, with a middle group of order at most
    ``--max-order`` and only the given prime divisors.

    The output is a specification file with one ``ext`` statement per object
    and a ``list corpus`` statement naming them all. Identical options give
    byte-identical output.
    """

    help = "Write the deterministic corpus of extensions with uniserial or zero end terms as a specification file."

    def add_arguments(self, parser):
        parser.add_argument("--max-order", type=int, default=144, help="Largest order of the middle group.")
        parser.add_argument(
            "--primes", type=prime_list, default=(2, 3), help="Comma-separated primes, for example 2,3."
        )
        parser.add_argument("--seed", type=int, default=0, help="Seed used with --sample.")
        parser.add_argument("--sample", type=int, default=None, help="Keep only this many objects.")
        parser.add_argument("--output", type=str, default=None, help="Write to this path instead of stdout.")

    def handle(self, *args, **options):
        if options["max_order"] < 1:
            raise CommandError("--max-order must be positive", returncode=EXIT_INVALID_INPUT)
        try:
            entries = generate_corpus(
                options["max_order"],
                options["primes"],
                seed=options["seed"],
                sample=options["sample"],
                caps=Caps.from_settings(),
            )
        except ModextError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=EXIT_INVALID_INPUT) from exc

        primes = ",".join(str(p) for p in options["primes"])
        header = [f"corpus --max-order {options['max_order']} --primes {primes}"]
        if options["sample"] is not None:
            header.append(f"sample {options['sample']} with seed {options['seed']}")
        text = dump_spec_file(
            [(entry.name, entry.obj) for entry in entries],
            lists=[("corpus", [entry.name for entry in entries])],
            header=header,
        )
        if options["output"] is None:
            self.stdout.write(text, ending="")
            return
        try:
            Path(options["output"]).write_text(text, encoding="utf-8")
        except OSError as exc:
            message = f"Cannot write {options['output']}: {exc.strerror}"
            raise CommandError(message, returncode=EXIT_INVALID_INPUT) from exc
        self.stderr.write(self.style.SUCCESS(f"{len(entries)} extensions written to {options['output']}"))
