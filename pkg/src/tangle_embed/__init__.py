"""Obstructions, computed from homology, to a tangle sitting inside a link."""

from .abelian import AbGroup, embeds, group_from_presentation, smith_normal_form
from .link import (
    PDCode,
    bracket_determinant,
    denominator_closure,
    determinant,
    double_cover_group,
    numerator_closure,
    parse_pd,
    two_bridge,
)
from .manifold import PresentedManifold, f_invariant, fill, filling_order, homology
from .obstruct import Report, Verdict, check_embedding
from .tangle import AlgebraicTangle, RationalTangle, double_cover, gcd_invariant, krebes_fraction, parse_tangle

__all__ = [
    "AbGroup",
    "AlgebraicTangle",
    "PDCode",
    "PresentedManifold",
    "RationalTangle",
    "Report",
    "Verdict",
    "bracket_determinant",
    "check_embedding",
    "denominator_closure",
    "determinant",
    "double_cover",
    "double_cover_group",
    "embeds",
    "f_invariant",
    "fill",
    "filling_order",
    "gcd_invariant",
    "group_from_presentation",
    "homology",
    "krebes_fraction",
    "numerator_closure",
    "parse_pd",
    "parse_tangle",
    "smith_normal_form",
    "two_bridge",
]
