"""Exact section spaces, Betti tables and spanning certificates for line
bundles on hyperelliptic curves, computed through their P1 pushforward.

Everything is exact rational arithmetic; a mod-p fast path is used only where
its result is certified back to an exact statement.
"""

__version__ = "0.1.0"

from .linalg import Mat, Subspace, matrix_rank, rank_kernel, solve
from .polynomials import HomPoly, LaurentVec, linear_form_vanishing_at
from .bundles import (BundleMap, CohData, CohSpace, ShortExactSequence,
                      SplitBundle, coh, evaluation_sequence, induced_coh_maps,
                      induced_h0, induced_h1)
from .cech import (CechSection, CokernelPresentation, PresentationError,
                   cokernel_sections, connecting_hom, section_mul)
from .curve import (CurveParams, DimensionReport, InvalidParameters,
                    WedgeSectionsDim, dimension_report, pushforward_coh,
                    recover_x, valid_x_values, validate, wedge_h1,
                    wedge_model, wedge_model_dim, wedge_sections_dim)
from .scroll import (BettiTable, ComplexTerm, DivClass, ScrollData,
                     adjunction_genus, betti_table, canonical_class,
                     curve_class, h1_bridge_check, hilbert_check, intersect,
                     scroll_data, scroll_resolution_terms)
from .spanning import (Pencil, QuotientSpace, SpanningCertificate,
                       SpanningError, anchor_section, certify_spanning,
                       default_points, defect_point, pencil,
                       wedge_defect_space, wedge_multiply)

__all__ = [name for name in dir() if not name.startswith("_")]
