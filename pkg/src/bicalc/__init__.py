"""Exact engine for noncommutative differential calculi and gauge theory.

Two constructions are covered: quantum tangent spaces on the q-deformed
enveloping algebra of su(2), built from its Casimir element, and
one/two-dimensional jet and finite-difference calculi on the line and
the plane, built from generator functions of the momentum variable.
Gauge fields, curvature, gauge transformations and covariant derivatives
run over any of the constructed calculi, and every structural identity
is checked by exact rational-function arithmetic.
"""

from .expressions import (
    ExpressionError,
    parse_coordinate_function,
    parse_form,
    parse_generator_function,
    parse_uq,
    split_components,
)
from .gauge import (
    cov_deriv_one_form,
    cov_deriv_scalar,
    covariant_expansion_report,
    curvature,
    gauge_transform,
    is_flat,
    matter_transform,
    pure_gauge,
    verify_gauge_lemmas,
)
from .reports import Check, Report
from .rn_calculus import (
    CalculusError,
    GeneratorFunction,
    GeneratorTerm,
    GradedForm,
    finite_difference_generator,
    jet_generator,
    make_calculus,
    tangent_space_from_c,
    translation_closure_holds,
)
from .scalars import (
    COORD_FIELD,
    QFIELD,
    RationalFunctionScalar,
    Scalar,
    ScalarError,
    ScalarField,
)
from .suites import SUITE_ORDER, run_all, run_suite
from .uqsu2 import (
    TangentSpace,
    UqElement,
    adjoint,
    antipode,
    braided_lie_basis,
    braided_lie_table,
    casimir,
    casimir_tangent_space,
    change_of_basis_check,
    check_tangent_space,
    coproduct,
    counit,
    fundamental_rep,
    is_central,
    q_limit_diagnostic,
    tangent_space_from_central,
)

__all__ = [
    "CalculusError",
    "Check",
    "COORD_FIELD",
    "ExpressionError",
    "GeneratorFunction",
    "GeneratorTerm",
    "GradedForm",
    "QFIELD",
    "RationalFunctionScalar",
    "Report",
    "Scalar",
    "ScalarError",
    "ScalarField",
    "SUITE_ORDER",
    "TangentSpace",
    "UqElement",
    "adjoint",
    "antipode",
    "braided_lie_basis",
    "braided_lie_table",
    "casimir",
    "casimir_tangent_space",
    "change_of_basis_check",
    "check_tangent_space",
    "coproduct",
    "counit",
    "cov_deriv_one_form",
    "cov_deriv_scalar",
    "covariant_expansion_report",
    "curvature",
    "finite_difference_generator",
    "fundamental_rep",
    "gauge_transform",
    "is_central",
    "is_flat",
    "jet_generator",
    "make_calculus",
    "matter_transform",
    "parse_coordinate_function",
    "parse_form",
    "parse_generator_function",
    "parse_uq",
    "pure_gauge",
    "q_limit_diagnostic",
    "run_all",
    "run_suite",
    "split_components",
    "tangent_space_from_c",
    "tangent_space_from_central",
    "translation_closure_holds",
    "verify_gauge_lemmas",
]
