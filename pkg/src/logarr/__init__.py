"""Exact invariants of central hyperplane arrangements.

Intersection lattices and Poincare polynomials, graded pieces and Hilbert
series of the logarithmic modules, Saito freeness, the non-freeness number N
(central and projective), Lebelt polynomials and the truncated symmetric
series calculus, Chern polynomials of the sheaf of logarithmic 1-forms, and
critical-scheme degrees.  All arithmetic is exact over the rationals.
"""

from logarr.arrangement import (Arrangement, Flat, IntersectionLattice,
                                add_generic_hyperplane, beta_invariant,
                                build_lattice, essentialize, is_k_generic,
                                lattice_isomorphic, localization,
                                poincare_poly, poincare_proj, restriction)
from logarr.cherncalc import (ChernPoly, ChernResult, LebeltSet,
                              borel_serre_top, c_series, chern_from_twists,
                              chern_of_log_forms, consistency_checks,
                              f_series, lebelt_polys, s_membership_check)
from logarr.logcomplex import (CriticalIdealData, certified_critical_degree,
                               cohomology_vanishing_check, critical_degree,
                               critical_ideal, random_weight)
from logarr.logmod import (FreenessResult, GradedDims, HilbertSeries,
                           der_graded_dim, der_hilbert_series, hilbert_series,
                           is_free_saito, n_central, n_generic_closed_form,
                           n_projective, omega0_graded_dim, omega_graded_dim,
                           omega_hilbert_series, twist_lists, wedge_defect)

__version__ = "0.1.0"
