"""Exact Betti numbers of Nakajima quiver varieties, Kac polynomials,
twisted PGL_2 character varieties and the L2 predictions built on them."""

from .charvar import (chi_l2_pgl2, count_char_variety_pgl2, e_polynomial, gl2_character_families,
                      mixed_hodge_pgl2, poincare_from_H, pure_part, purity_check)
from .exact import BiPoly, LaurentPoly, RatFunc, parse_terms
from .fforacle import brute_kac, count_moment_fiber, counts_to_poincare
from .kacpoly import kac_polynomial, kac_positivity_report, weight_multiplicity
from .predict import conjecture_main, euler_phi, segal_selby_bound, sen_l2_dim, vafa_witten
from .quiver import ParabolicType, Quiver, crab_quiver, jordan_quiver, loop_quiver, parse_quiver, path_quiver
from .qvbetti import betti_table, chi_l2_quiver, middle_betti, poincare_polynomial
from .series import GradedSeries

__version__ = "0.1.0"
