"""Exact checks for LP-Sasakian frame manifolds, the two-parameter general
connection and generalized eta-Ricci solitons."""

from .exact import LinearSystem, Q, Tensor, null_space, raise_lower, tensor_contract
from .fixtures import example_manifold, warped_frame
from .frame import (
    Connection,
    CurvatureData,
    FrameManifold,
    curvature,
    koszul_levi_civita,
    metricity,
    torsion,
    validate_manifold,
)
from .paracontact import (
    PRESETS,
    ConnectionParams,
    ParacontactStructure,
    audit_closed_forms,
    closed_form_curvature_bar,
    general_connection,
    preset_connection,
    verify_almost_paracontact,
    verify_lp_sasakian,
)
from .report import Check, Report, Witness
from .soliton import SolitonCoefficients, soliton_solve
from .specfile import SpecError, load_spec

__version__ = "0.1.0"

__all__ = [
    "Check", "Connection", "ConnectionParams", "CurvatureData", "FrameManifold", "LinearSystem",
    "PRESETS", "ParacontactStructure", "Q", "Report", "SolitonCoefficients", "SpecError",
    "Tensor", "Witness", "audit_closed_forms", "closed_form_curvature_bar", "curvature",
    "example_manifold", "general_connection", "koszul_levi_civita", "load_spec", "metricity",
    "null_space", "preset_connection", "raise_lower", "soliton_solve", "tensor_contract",
    "torsion", "validate_manifold", "verify_almost_paracontact", "verify_lp_sasakian",
    "warped_frame",
]
