"""Exact arithmetic for the s = 0 Barnes-Hurwitz zeta cocycle and Ehrhart quasi-polynomials of triangles."""
from .cocycle import (
    HypothesisError,
    act,
    cocycle_residual,
    fixed_point_tau,
    z0_base,
    zeta0,
    zeta0_rational_case,
    zeta0_via_action,
)
from .dedekind import dedekind_rademacher
from .ehrhart import (
    LatticeTriangle,
    QuasiPolynomial,
    count_lattice,
    dilate,
    edge_counts,
    ehrhart_fit,
    face_indices,
    g_coefficient,
    interior_closed_form,
    interior_floor_sum,
    theorem3_residual,
    triangle_T,
    weighted_count,
)
from .harness import SuiteReport, emit_table, run_suite, verify_hayes, verify_prop41
from .lattice import (
    IntMatrix2,
    RationalPoint,
    character_order,
    content,
    coset_reps,
    random_sl2,
)
from .scalars import (
    QuadraticReal,
    angle_bracket,
    bernoulli_bar1,
    bernoulli_bar2,
    frac,
    parse_quad,
    quad_mobius,
    quad_sign,
    render_quad,
)

__version__ = "0.1.0"
