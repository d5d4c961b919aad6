"""Exact Jacobian syzygies of plane curves: free, nearly free and almost free curves."""

from .arrangements import (LineArrangement, arrangement_mu_tau, characteristic_polynomial,
                           chi_factorization_check, intersection_points)
from .catalog import CatalogEntry, corpus, entry
from .errors import CurveError
from .exact_linalg import GF, QQ
from .jacobian import (BettiTable, Classification, HilbertProfile, analyze, betti_table,
                       classify, hilbert_profile)
from .monodromy import (CyclotomicProduct, PuiseuxSequence, catalan_check,
                        classify_unicuspidal, fibonacci, le_delta, order_hypothesis)
from .poly import Curve, HomPoly, parse
from .singular_locus import total_milnor

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "CatalogEntry", "Classification", "Curve", "CurveError", "CyclotomicProduct",
    "GF", "HilbertProfile", "HomPoly", "LineArrangement", "PuiseuxSequence", "QQ", "analyze",
    "arrangement_mu_tau", "betti_table", "catalan_check", "characteristic_polynomial",
    "chi_factorization_check", "classify", "classify_unicuspidal", "corpus", "entry",
    "fibonacci", "hilbert_profile", "intersection_points", "le_delta", "order_hypothesis",
    "parse", "total_milnor",
]
