"""Named sweeps, one per reference figure panel.

Frequencies are in units of kappa. Where a panel only says that a coupling
is varied, the sampled values here are a local choice.
"""
from __future__ import annotations

from ..model import Case, ModelParams
from .sweep import Axis, Quantity, SweepSpec

DELTA_AXIS = Axis("delta", -20.0, 20.0, 2001)
OMEGA_AXIS = Axis("omega", -20.0, 20.0, 2001)

FIG1_GAMMAS = {"a": (3.0, 3.0), "b": (30.0, 30.0), "c": (30.0, 3.0), "d": (3.0, 30.0)}


def fig1_params(panel: str) -> ModelParams:
    ga, gb = FIG1_GAMMAS[panel]
    return ModelParams(Case.RED, g_a=10.0, g_b=10.0, gamma_a=ga, gamma_b=gb)


def _response(case, quantity=Quantity.RESPONSE_A, axis2=None, **kw):
    base = ModelParams(case, gamma_a=5.0, gamma_b=5.0, **kw)
    return SweepSpec(base, DELTA_AXIS, quantity, axis2)


def _spectrum(case, axis2, omega_axis=OMEGA_AXIS, **kw):
    base = ModelParams(case, gamma_a=5.0, gamma_b=5.0, **kw)
    return SweepSpec(base, omega_axis, Quantity.SPECTRUM_A, axis2, delta=0.0)


def _build() -> dict:
    out = {}
    for panel in FIG1_GAMMAS:
        p = fig1_params(panel)
        out[f"fig1{panel}"] = SweepSpec(p, DELTA_AXIS, Quantity.RESPONSE_A)
        out[f"fig1{panel}_B"] = SweepSpec(p, DELTA_AXIS, Quantity.RESPONSE_B)
    red, blue = Case.RED, Case.BLUE
    out.update({
        "fig2a": _response(red, axis2=Axis("g_a", 2.0, 10.0, 5), g_b=1.0),
        "fig2b": _response(red, axis2=Axis("g_a", 1.0, 10.0, 4), g_b=10.0),
        "fig2c": _response(red, axis2=Axis("g_a", 10.0, 50.0, 5), g_b=10.0),
        "fig2d": _response(red, axis2=Axis("g_b", 1.0, 10.0, 4), g_a=1.0),
        "fig2e": _response(red, axis2=Axis("g_b", 1.0, 10.0, 4), g_a=10.0),
        "fig2f": _response(red, axis2=Axis("g_b", 10.0, 50.0, 5), g_a=10.0),
        "fig3a": _response(blue, axis2=Axis("g_a", 0.0, 6.0, 5), g_b=1.0),
        "fig3b": _response(blue, axis2=Axis("g_a", 0.0, 10.0, 5), g_b=10.0),
        "fig3c": _response(blue, axis2=Axis("g_a", 10.0, 50.0, 5), g_b=10.0),
        "fig3d": _response(blue, axis2=Axis("g_b", 0.0, 6.0, 5), g_a=1.0),
        "fig3e": _response(blue, axis2=Axis("g_b", 6.0, 30.0, 5), g_a=1.0),
        "fig3f": _response(blue, axis2=Axis("g_b", 0.0, 30.0, 4), g_a=10.0),
        "fig4a": _spectrum(red, Axis("g_a", 0.0, 30.0, 31), Axis("omega", -20.0, 20.0, 401), g_b=10.0),
        "fig4b": _spectrum(red, Axis("g_b", 0.0, 30.0, 31), Axis("omega", -20.0, 20.0, 401), g_a=10.0),
        "fig5a": _spectrum(blue, Axis("g_a", 0.0, 6.0, 5), g_b=1.0),
        "fig5b": _spectrum(blue, Axis("g_b", 0.0, 30.0, 4), g_a=10.0),
    })
    return out


SCENARIOS = _build()


def scenario(name: str) -> SweepSpec:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None
