# coding: utf-8
"""Numerical verification of graded integrable structures

Operators on tensor powers of the super vector space C^(m|n) are dense complex
matrices carrying their grading. On top of them the package builds the
rational and trigonometric R-matrices of gl(m|n), monodromy and double-row
transfer matrices with diagonal and non-diagonal boundaries, the non-local
charges and Casimirs read off their asymptotics, and checks every defining
identity at seeded random spectral points. Each check returns a
VerificationReport that serializes to a stable JSON schema.
"""
from superbound._boundary import (
    BoundarySpec, ChargeSet, casimir_oracle, casimir_report, check_commuting_transfer,
    check_reflection, check_series_against_point, double_row_T, extract_charges,
    kka_blocks, kka_diagonal, predicted_preserved, reflection_residual, series_double_row,
    symmetry_scan, transfer_matrix,
)
from superbound._config import RunConfig, build_boundary, dump_config, load_config
from superbound._exceptions import (
    Error, BoundaryError, ConfigError, GradingError, ParityError, SingularPointError, SpaceError,
)
from superbound._graded import (
    DISTINGUISHED, SYMMETRIC, GradedOperator, Grading, aux_components, crossing_form,
    diagonal, from_aux_components, graded_permutation, identity, make_grading,
    operator_parity, partial_super_trace_aux, partial_transpose, permute_spaces, place,
    super_commutator, super_trace, tensor_embed, transpose_T, unit, zero,
)
from superbound._qboundary import (
    ConstraintFit, IdentityBoundary, KDiag, MBoundary, NonDiagBoundary, TrigBoundary,
    asymptotic_boundary, boundary_charges, casimir_closed_forms, check_charges_commute,
    check_commuting_transfer_trig, check_nondiag_reflection, check_q_crossing_form,
    check_reflection_trig, kdiag_solution, open_transfer_trig, q_casimir_report, q_casimirs,
    q_crossing_form, q_symmetry_scan, q_twisted, q_twisted_charges, q_twisted_double_row,
    solve_c_constraint,
)
from superbound._qdeformed import (
    QParams, R_pm_limits, R_trig, M_matrix, UqGenerators, cartan_matrix,
    check_coassociativity, check_frt, check_L_pm, check_rtt_trig, check_uq_relations,
    L_pm_from_generators, check_ybe_trig, monodromy_pm, select_weight_convention, uq_fundamental,
)
from superbound._report import VerificationReport
from superbound._series import OperatorSeries
from superbound._twisted import (
    check_twisted, osp_dimension, twisted_casimir, twisted_objects, twisted_residual,
    twisted_symmetry_scan,
)
from superbound._yangian import (
    GeneratorSet, R_rational, Rbar_rational, aux_generator_sum, check_gl_relations, check_opposite_coproduct,
    check_rtt, check_ybe, coproduct, coproduct_generators, generator, monodromy_T,
    opposite_coproduct_generators, permutation_P, projector_Q, rho,
)

__version__ = "1.0.0"
