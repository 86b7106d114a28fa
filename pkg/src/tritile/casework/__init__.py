"""Case certificates for tilings by a tile not similar to the tiled triangle.

The search module pulls in numba, so it is imported on first use.
"""

from .certify import (certify_pi11, certify_pi11_all, certify_pi14, certify_piover5, certify_piover6,
                      certify_twopifive, side_ratio_certificate)
from .classify import Family, classify, lemma46_scan
from .ell import eliminate_ell, table_ell3
from .facts import Contradiction, ZeroFactBase, propagate_nonneg, settle
from .reports import CertificateReport, SearchReport, Step, Verdict
from .splits import AngleForm, SplitBounds, SplitRecord, enumerate_splits
from .threetwo import engine_32_case1, engine_32_case2, engine_32_shapes

__all__ = [
    "AngleForm", "CertificateReport", "Contradiction", "Family", "SearchReport", "SplitBounds",
    "SplitRecord", "Step", "Verdict", "ZeroFactBase", "certify_pi11", "certify_pi11_all",
    "certify_pi14", "certify_piover5", "certify_piover6", "certify_twopifive", "classify",
    "eliminate_ell", "engine_32_case1", "engine_32_case2", "engine_32_shapes", "enumerate_splits",
    "lemma46_scan", "propagate_nonneg", "search_32", "settle", "side_ratio_certificate", "table_ell3",
]


def __getattr__(name):
    if name == "search_32":
        from .search import search_32
        return search_32
    raise AttributeError(name)
