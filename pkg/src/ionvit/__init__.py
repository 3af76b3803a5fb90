"""Two trapped-ion ensembles coupled through a shared vibrational mode.

Closed-form steady states and fluctuation spectra for the red- and
blue-sideband couplings, an independent linear-systems oracle, a small
truncated-Fock diagonalizer and a sweep/CLI workbench.
"""
from .model import (
    Case,
    EffectiveQuantities,
    MicroscopicParams,
    ModelParams,
    SteadyState,
    blue_poles,
    effective_params,
    effective_quantities,
    pole_coupling,
    response_intensity,
    steady_state,
)
from .spectra import (
    OmegaEffective,
    SpectrumSeries,
    collective_spectrum,
    integrated_spectrum,
    omega_effective,
    spectrum_series,
    vib_spectrum,
)

__all__ = [
    "Case",
    "EffectiveQuantities",
    "MicroscopicParams",
    "ModelParams",
    "OmegaEffective",
    "SpectrumSeries",
    "SteadyState",
    "blue_poles",
    "collective_spectrum",
    "effective_params",
    "effective_quantities",
    "integrated_spectrum",
    "omega_effective",
    "pole_coupling",
    "response_intensity",
    "spectrum_series",
    "steady_state",
    "vib_spectrum",
]
