"""Exact Picard-Fuchs equations, mirror maps and instanton numbers for
one-parameter hypersurface families in weighted projective 4-space."""

from .exact import RatFunc, Rational, UniPoly, psi_to_z, ratfunc_eval_zero, ratfunc_normalize
from .griffiths import (
    PFOperator,
    RationalForm,
    assemble_pf,
    build_omega_ell,
    check_max_unipotent,
    companion_matrix,
    derive_epsilons,
    extract_lambda,
    pole_reduce_step,
    reduce_omega5,
)
from .groebner import (
    GREVLEX,
    GRLEX,
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    divide_with_cofactors,
    jacobian_split,
    s_polynomial,
)
from .mirror import (
    YukawaExpansion,
    extract_n,
    h_sequence,
    mirror_data,
    q_expansion,
    schubert_tangent_lines,
    verify_c3,
    verify_integrality,
)
from .multipoly import (
    BUILTIN_FAMILIES,
    FamilySpec,
    MultiPoly,
    family_polynomial,
    partial_derivative,
    poly_arith,
    weighted_degree,
)
from .pipeline import derive, run_family
from .series import PowerSeries, SeriesVector, solve_homogeneous, solve_inhomogeneous

__version__ = "0.1.0"
