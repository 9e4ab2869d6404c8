"""
Django management command checking the Hall condition and the mutual-reachability pairing of a digraph.

Example usage:
    python manage.py ext_digraph objects.ext d
"""

from modext.engine.digraph import hall_condition, ks_relabel
from modext.management.base import ReportCommand
from modext.reports import digraph_report


class Command(ReportCommand):
    """
    Check the Hall condition on the X side of a declared bipartite digraph
    with the matching algorithm, and with subset enumeration when the digraph
    is small enough, then look for a bijection ``X -> Y`` pairing mutually
    reachable vertices.
    """

    help = "Check the Hall condition of a bipartite digraph and build a mutual-reachability pairing."

    def add_arguments(self, parser):
        parser.add_argument("file", type=str, help="Path to the specification file.")
        parser.add_argument("name", type=str, help="Name of the digraph.")
        parser.add_argument(
            "--skip-brute-force",
            action="store_true",
            help="Only run the matching-based Hall check.",
        )
        super().add_arguments(parser)

    def build_report(self, caps, **options):
        spec = self.load(options["file"], caps)
        D = spec.digraph(options["name"])
        brute = None
        if not options["skip_brute_force"] and len(D.vertices) <= caps.digraph_brute_force_max_vertices:
            brute = hall_condition(D, "brute", caps)
        matching = hall_condition(D, "matching", caps)
        return digraph_report(options["name"], D, brute, matching, ks_relabel(D))
