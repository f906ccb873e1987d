"""Saturating sets in projective spaces and short linear covering codes.

Finite fields (:mod:`covsat.gf`), projective geometry (:mod:`covsat.pg`),
covering-radius machinery (:mod:`covsat.codes`), the explicit constructions
(:mod:`covsat.constructions`), length-function bounds (:mod:`covsat.bounds`)
and file/CLI plumbing (:mod:`covsat.io`, :mod:`covsat.cli`).
"""

from .bounds import bound_even_R, bound_known_tR, bound_new_tR, compare, phi
from .codes import (CodeParams, CoverageProfile, Distance, ParityCheckMatrix, analyze,
                    capsule_spectrum, covering_radius, is_locally_optimal, matrix_set_bridge,
                    min_distance_small, set_matrix_bridge)
from .constructions import (QMRecipe, construction_s, construction_s_matrix, direct_sum,
                            family_codimension_tR, plane_saturating_set, qm1, qm2,
                            triangle_double_blocking)
from .gf import FieldCtx, FieldElement, build_extension, build_field, gf, subfield_embed
from .io import emit, parse, read_matrix, write_matrix
from .pg import (PointSet, ProjPoint, baer_embed, enumerate_points, essential_points,
                 is_double_blocking, is_minimal_saturating, saturation_level, theta)
from .report import VerifyReport, verify

__version__ = "0.1.0"
