"""Exact census of [3x3;3]-MRD codes over small finite fields.

Every normalized MRD triple (I, C_f, Z) is built from a pair of elements of
F_{q^3}, cross-checked against brute-force enumeration, and fed into exact
counting formulas for the proportion of MRD codes among all 3-dimensional
subspaces of 3x3 matrices.
"""

from .census import CensusOptions, CensusReport, brute_force_S, census_report, formula_report
from .gfield import ExtCtx, FieldCtx, MonicCubic, build_extension, build_field, irreducible_cubics
from .menichetti import enumerate_S_parametric, is_admissible, sigma_matrices
from .rankcode import MrdTriple, closed_form_proportion, gaussian_binomial, is_mrd, proportion_of_mrd
from .semifield import Kind, SemifieldView, classify, dual_triple

__all__ = [
    "CensusOptions",
    "CensusReport",
    "ExtCtx",
    "FieldCtx",
    "Kind",
    "MonicCubic",
    "MrdTriple",
    "SemifieldView",
    "brute_force_S",
    "build_extension",
    "build_field",
    "census_report",
    "classify",
    "closed_form_proportion",
    "dual_triple",
    "enumerate_S_parametric",
    "formula_report",
    "gaussian_binomial",
    "irreducible_cubics",
    "is_admissible",
    "is_mrd",
    "proportion_of_mrd",
    "sigma_matrices",
]
