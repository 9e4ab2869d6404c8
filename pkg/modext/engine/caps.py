"""Enumeration caps shared by the engine.

Caps are read from Django settings when settings are configured (see
``modext.settings.common``) and fall back to the built-in defaults otherwise,
so the engine is usable as a plain library.
"""

from __future__ import annotations

from attrs import define
from django.conf import settings

from modext.exceptions import CapExceeded
from modext.settings.common import CAP_DEFAULTS

__all__ = ["Caps"]


@define(frozen=True)
class Caps:
    """Limits on exhaustive enumeration.

    Attributes:
        max_group_order: Largest group whose elements may be enumerated.
        max_hom_count: Largest predicted number of homomorphisms per enumeration.
        oracle_max_order: Largest direct sum the oracle (and ``direct_sum``) accepts.
        oracle_max_nodes: Largest number of search nodes the oracle may visit.
        digraph_brute_force_max_vertices: Largest digraph for brute-force Hall checks.
        max_pair_checks: Pairs checked exhaustively per ideal law before sampling.
    """

    max_group_order: int = CAP_DEFAULTS["MODEXT_MAX_GROUP_ORDER"]
    max_hom_count: int = CAP_DEFAULTS["MODEXT_MAX_HOM_COUNT"]
    oracle_max_order: int = CAP_DEFAULTS["MODEXT_ORACLE_MAX_ORDER"]
    oracle_max_nodes: int = CAP_DEFAULTS["MODEXT_ORACLE_MAX_NODES"]
    digraph_brute_force_max_vertices: int = CAP_DEFAULTS["MODEXT_DIGRAPH_BRUTE_FORCE_MAX_VERTICES"]
    max_pair_checks: int = CAP_DEFAULTS["MODEXT_MAX_PAIR_CHECKS"]

    @classmethod
    def from_settings(cls) -> Caps:
        """Build caps from Django settings, or the defaults if settings are not configured."""
        if not settings.configured:
            return cls()
        values = {name: getattr(settings, name, default) for name, default in CAP_DEFAULTS.items()}
        return cls(
            max_group_order=values["MODEXT_MAX_GROUP_ORDER"],
            max_hom_count=values["MODEXT_MAX_HOM_COUNT"],
            oracle_max_order=values["MODEXT_ORACLE_MAX_ORDER"],
            oracle_max_nodes=values["MODEXT_ORACLE_MAX_NODES"],
            digraph_brute_force_max_vertices=values["MODEXT_DIGRAPH_BRUTE_FORCE_MAX_VERTICES"],
            max_pair_checks=values["MODEXT_MAX_PAIR_CHECKS"],
        )

    @classmethod
    def resolve(cls, caps: Caps | None) -> Caps:
        """Return ``caps`` if given, else the configured caps."""
        return caps if caps is not None else cls.from_settings()

    def check_group_order(self, order: int, what: str = "group") -> None:
        """Raise ``CapExceeded`` if a group of this order may not be enumerated."""
        if order > self.max_group_order:
            raise CapExceeded(f"{what} of order {order} exceeds MODEXT_MAX_GROUP_ORDER={self.max_group_order}")

    def check_hom_count(self, count: int) -> None:
        """Raise ``CapExceeded`` if ``count`` homomorphisms may not be enumerated."""
        if count > self.max_hom_count:
            raise CapExceeded(f"{count} homomorphisms exceed MODEXT_MAX_HOM_COUNT={self.max_hom_count}")

    def check_oracle_order(self, order: int) -> None:
        """Raise ``CapExceeded`` if a direct sum of this order is too large."""
        if order > self.oracle_max_order:
            raise CapExceeded(f"direct sum of order {order} exceeds MODEXT_ORACLE_MAX_ORDER={self.oracle_max_order}")
