"""Differential uniformity of polynomial functions over F_{2^m}, with the
geometric test for delta(f) <= 4 and the degree/field-size thresholds."""

from .bounds import bound_report, monomial_theorem_applies, polynomial_theorem_applies
from .funcspace import PolyFunc, interpolate, normalize, parse_function
from .geometry import contained_in_V, equivalence_check, proj_curve_points, structural_checks
from .gf2m import GF2m
from .mvpoly import TriPoly, homogeneous_pf, numerator, pf_polynomial
from .uniformity import DdtReport, delta, delta_exhaustive, delta_monomial, delta_sampled

__version__ = "0.1.0"
