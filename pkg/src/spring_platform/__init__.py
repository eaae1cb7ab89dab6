"""Equilibrium configurations of a planar three-spring compliant platform
mechanism pressed against a rigid surface.

The library re-derives the equilibrium conditions from the mechanism
geometry and solves them by dialytic elimination: a quartic when all
spring free lengths are zero, and a degree-48 eliminant when exactly one
free length is nonzero, with extraneous roots removed by residual
verification.
"""

from .analysis import AnalysisReport, run_analysis
from .config import RunConfig, config_from_dict, dump_config, load_config
from .errors import (AnalysisError, DegenerateQuartic, InterpolationMismatch,
                     MechanismError, NonConvergence, NotAssemblable,
                     NonZeroFreeLength, OriginOnPlane, ParallelLines,
                     ParseError, ProbeSingularity, UnsupportedFreeLengthPattern,
                     ValidationError, WrongFreeLengthPattern,
                     ZeroLengthSpring, ZeroPolynomial)
from .free_pose import (FreePoseResult, dialytic_residual, free_point_p_fixed,
                        free_pose, solve_a2, solve_o2)
from .geometry import (Contact, Line2, PlaneSpec, Point2, Transform2H,
                       classify_contact, intersect_lines, line_through,
                       make_plane, make_transform)
from .mechanism import (ContactPose, MechanismParams, SpringState,
                        force_projection_residual, moment_residual, point_e,
                        pose_from, pose_from_trig, spring_state)
from .one_nonzero import (abcd_at, quartic_pair_at, resultant_polynomial,
                          solve_one_nonzero_free_length)
from .output import emit_tables, render_svg, report_to_dict
from .polynomials import (BackSubResult, CPolynomial, PolyMatrix,
                          back_substitute, dialytic_matrix, poly_roots,
                          polymatrix_det)
from .solutions import EquilibriumSolution, residual_margin
from .zero_free_lengths import (LinearizedEquilibrium, linearize,
                                quartic_coefficients,
                                solve_zero_free_lengths)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
