"""Oscillation analysis for y'' + b(x) y' + c(x) y = f(x).

Thin re-export of the compiled core: expression parsing, the corrected
discriminant D = b^2 - 4c + 2b', window classification, adaptive integration
with zero counting, and the verification checks.
"""

from ._core import (
    CatalogEntry,
    CheckOptions,
    ClassificationReport,
    Expr,
    GapCheck,
    HypothesisError,
    InitialCondition,
    IntegrationStats,
    NormalForm,
    NormalFormCheckResult,
    NumericError,
    OdeSpec,
    Oscillation,
    OscillatesAboutResult,
    ParseError,
    RegressionResult,
    RiccatiCheckResult,
    SignPiece,
    SingularPathError,
    SpecError,
    SturmCheckResult,
    Trajectory,
    UnboundParameterError,
    Window,
    WronskianCheckResult,
    Zero,
    ZeroList,
    boundary_values,
    catalog_entries,
    check_normal_form,
    check_riccati,
    check_sturm,
    check_wronskian,
    classify,
    count_zeros,
    differentiate,
    discriminant,
    eval,
    find_entry,
    integrate_expr,
    make_spec,
    naive_discriminant,
    normal_form,
    oscillates_about,
    parse,
    regression_check,
    residual,
    simplify,
    solve_ivp,
    solve_ivp_window,
    subtract_expr,
)

__all__ = [name for name in dir() if not name.startswith("_")]
