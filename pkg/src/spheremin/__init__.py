"""Minimal surfaces on punctured spheres from Weierstrass data."""

__version__ = "0.1.0"

from .algebra import (
    INF,
    FactoredMeromorphic,
    monomial,
    residue_at,
    residue_at_infinity,
    residue_contour,
    residue_limit,
    shifted_power,
)
from .families import (
    FamilyInstance,
    make_catenoid_fixture,
    make_double_vase,
    make_family,
    make_vase,
)
from .kernels import BACKEND as kernel_backend
from .mesh import (
    DomainSpec,
    SurfaceMesh,
    estimate_mean_curvature,
    sample_mesh,
    write_obj,
    write_ply,
)
from .paths import (
    IntegrationPath,
    check_path_independence,
    integrate_point,
    plan_path,
)
from .periods import (
    DoubleVaseParams,
    VaseParams,
    assert_period_closed,
    puncture_periods,
    solve_double_vase_a,
    solve_vase_rho,
)
from .weierstrass import (
    WeierstrassData,
    classify_end,
    conformal_factor,
    coordinate_forms,
    degree_audit,
    gauss_normal,
    regularity_check,
)

__all__ = [
    "INF",
    "FactoredMeromorphic",
    "monomial",
    "shifted_power",
    "residue_at",
    "residue_at_infinity",
    "residue_contour",
    "residue_limit",
    "WeierstrassData",
    "coordinate_forms",
    "regularity_check",
    "degree_audit",
    "gauss_normal",
    "classify_end",
    "conformal_factor",
    "VaseParams",
    "DoubleVaseParams",
    "puncture_periods",
    "assert_period_closed",
    "solve_vase_rho",
    "solve_double_vase_a",
    "FamilyInstance",
    "make_vase",
    "make_double_vase",
    "make_catenoid_fixture",
    "make_family",
    "IntegrationPath",
    "plan_path",
    "integrate_point",
    "check_path_independence",
    "DomainSpec",
    "SurfaceMesh",
    "sample_mesh",
    "estimate_mean_curvature",
    "write_obj",
    "write_ply",
    "kernel_backend",
]
