"""Momentum-space photon wavefunctions in the two-component Berry-gauge
representation: triads, Berry potential/curvature, operator expectations,
and the spin-Hall barycenter shift."""

from ._core import (
    BerryGauge,
    GaugeFrame,
    KGrid,
    ShiftResult,
    TwoComponentWavefunction,
    berry_field_analytic,
    berry_potential,
    build_grid,
    default_stencil_order,
    expectation_b,
    expectation_momentum,
    expectation_position,
    expectation_spin,
    gauge_angle,
    gaussian_packet,
    monopole_flux,
    run_scenario,
    scan_theta,
    set_default_stencil_order,
    triad_at,
    verify_commutators,
)

__all__ = [
    "BerryGauge",
    "GaugeFrame",
    "KGrid",
    "ShiftResult",
    "TwoComponentWavefunction",
    "berry_field_analytic",
    "berry_potential",
    "build_grid",
    "default_stencil_order",
    "expectation_b",
    "expectation_momentum",
    "expectation_position",
    "expectation_spin",
    "gauge_angle",
    "gaussian_packet",
    "monopole_flux",
    "run_scenario",
    "scan_theta",
    "set_default_stencil_order",
    "triad_at",
    "verify_commutators",
]

__version__ = "0.1.0"
