"""Exact tools for free plane curves, eigenschemes of derivations and pencils."""

__version__ = "0.1.0"

from .scalars import GF, QQ, QQI, field_from_spec  # noqa: E402
from .polys import Poly  # noqa: E402
from .parsing import parse_poly, parse_point  # noqa: E402
from .derivations import Derivation, decide_freeness, FreenessCertificate  # noqa: E402
from .eigenscheme import eigenscheme_of, contains_curve, theorem25_check  # noqa: E402
from .pencil import Pencil, analyze, member_union, theorem35_check, add_smooth_member  # noqa: E402
from .singularities import tjurina_report, local_invariants, singular_points  # noqa: E402

__all__ = [
    "GF", "QQ", "QQI", "field_from_spec", "Poly", "parse_poly", "parse_point",
    "Derivation", "decide_freeness", "FreenessCertificate",
    "eigenscheme_of", "contains_curve", "theorem25_check",
    "Pencil", "analyze", "member_union", "theorem35_check", "add_smooth_member",
    "tjurina_report", "local_invariants", "singular_points",
]
