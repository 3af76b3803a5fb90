"""Closed-form fluctuation spectra of the vibrational and collective modes.

The spectra follow the ``<dX(w) dX^dag(w')> = S(w) delta(w - w') / 2pi``
normalization, so an uncoupled collective mode has a Lorentzian of peak
height ``2 (N + 1) / gamma``. In the blue case the vibrational entry is the
spectrum of ``c^dag`` and vanishes for a vacuum bath.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .model import POLE_TOL, Case, ModelParams


@dataclass(frozen=True)
class OmegaEffective:
    """Frequency-resolved effective detuning, damping and cross factors.

    Blue-case instances hold the primed quantities.
    """

    delta_eff_w: np.ndarray
    kappa_eff_w: np.ndarray
    gamma_factor_a: np.ndarray
    gamma_factor_b: np.ndarray


def omega_effective(p: ModelParams, delta: float, omega) -> OmegaEffective:
    omega = np.asarray(omega, dtype=float)
    u = omega - delta
    da = u**2 + p.gamma_a**2
    db = u**2 + p.gamma_b**2
    shift = p.g_a**2 * u / da + p.g_b**2 * u / db
    extra = p.g_a**2 * p.gamma_a / da + p.g_b**2 * p.gamma_b / db
    if p.case is Case.RED:
        d_eff = delta + shift
        k_eff = p.kappa + extra
    else:
        d_eff = delta - shift
        k_eff = p.kappa - extra
    w = omega - d_eff
    vib_den = w**2 + k_eff**2
    with np.errstate(divide="ignore", invalid="ignore"):
        gam_a = (u * w - p.gamma_a * k_eff) / (vib_den * da)
        gam_b = (u * w - p.gamma_b * k_eff) / (vib_den * db)
    return OmegaEffective(d_eff, k_eff, gam_a, gam_b)


def _vib_denominator(omega, oe: OmegaEffective):
    return (omega - oe.delta_eff_w) ** 2 + oe.kappa_eff_w**2


def vib_spectrum(p: ModelParams, delta: float, omega) -> np.ndarray:
    """``S_c`` (red) or ``S'_{c^dag}`` (blue)."""
    omega = np.asarray(omega, dtype=float)
    oe = omega_effective(p, delta, omega)
    if p.case is Case.RED:
        num = 2 * p.kappa * (p.n_vib + 1) + 2 * (p.n_eg + 1) * (oe.kappa_eff_w - p.kappa)
    else:
        num = 2 * p.kappa * p.n_vib + 2 * (p.n_eg + 1) * (p.kappa - oe.kappa_eff_w)
    with np.errstate(divide="ignore", invalid="ignore"):
        return num / _vib_denominator(omega, oe)


def collective_spectrum(p: ModelParams, delta: float, omega, which: str) -> np.ndarray:
    """``S_A`` or ``S_B`` for either sideband case."""
    omega = np.asarray(omega, dtype=float)
    if which not in ("A", "B"):
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    oe = omega_effective(p, delta, omega)
    s_c = vib_spectrum(p, delta, omega)
    if which == "A":
        g, gamma, cross = p.g_a, p.gamma_a, oe.gamma_factor_a
    else:
        g, gamma, cross = p.g_b, p.gamma_b, oe.gamma_factor_b
    sign = 1.0 if p.case is Case.RED else -1.0
    num = g**2 * s_c + 2 * gamma * (p.n_eg + 1) * (1 + sign * 2 * g**2 * cross)
    return num / ((omega - delta) ** 2 + gamma**2)


def spectral_poles(p: ModelParams, delta: float, omega) -> np.ndarray:
    """Mask of grid points where the vibrational denominator vanishes."""
    oe = omega_effective(p, delta, omega)
    return np.sqrt(_vib_denominator(np.asarray(omega, dtype=float), oe)) < POLE_TOL * p.kappa


@dataclass(frozen=True)
class SpectrumSeries:
    omega: np.ndarray
    s_a: np.ndarray
    s_b: np.ndarray
    s_c: np.ndarray
    case: Case
    params: ModelParams
    delta: float


def default_grid(lo: float = -20.0, hi: float = 20.0, n: int = 2001) -> np.ndarray:
    return np.linspace(lo, hi, n)


def spectrum_series(p: ModelParams, delta: float, grid=None) -> SpectrumSeries:
    """Evaluate all three spectra on a strictly increasing ``grid``."""
    grid = default_grid() if grid is None else np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-D array")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    return SpectrumSeries(
        omega=grid,
        s_a=collective_spectrum(p, delta, grid, "A"),
        s_b=collective_spectrum(p, delta, grid, "B"),
        s_c=vib_spectrum(p, delta, grid),
        case=p.case,
        params=p,
        delta=float(delta),
    )


def _mode_spectrum(p: ModelParams, delta: float, which: str):
    if which == "c":
        return lambda w: vib_spectrum(p, delta, w)
    return lambda w: collective_spectrum(p, delta, w, which)


def _resonances(p: ModelParams, delta: float):
    """Centres and half-widths of the normal-mode poles of the spectra."""
    from .oracle import build_fluctuation

    lam = np.linalg.eigvals(build_fluctuation(p, delta).drift)
    return np.abs(lam.imag), np.abs(lam.real)


def integrated_spectrum(p: ModelParams, delta: float, which: str, span: float = 50.0) -> float:
    """Equal-time fluctuation ``(1/2pi) * integral of S_which(w) dw``.

    Adaptive quadrature over ``delta +/- L`` with ``L = span * max(kappa_eff,
    gamma_a, gamma_b, g_a, g_b)``, plus the ``a / w^2`` tail fitted at each
    edge. The interval is cut at every normal-mode resonance and a few
    linewidths either side of it so narrow lines are not stepped over.
    ``which`` is ``"A"``, ``"B"`` or ``"c"``.
    """
    f = _mode_spectrum(p, delta, which)
    k_eff = float(omega_effective(p, delta, delta).kappa_eff_w)
    half = span * max(abs(k_eff), p.gamma_a, p.gamma_b, p.g_a, p.g_b)
    lo, hi = delta - half, delta + half
    centres, widths = _resonances(p, delta)
    cuts = {lo, hi}
    for c, w in zip(centres, widths):
        for sign in (-1.0, 1.0):
            for k in (0.0, 1.0, 5.0, 25.0, -1.0, -5.0, -25.0):
                cuts.add(sign * c + k * w)
    cuts = np.array(sorted(x for x in cuts if lo <= x <= hi))
    # conjugate pole pairs give near-duplicate cuts; drop slivers
    keep = np.r_[True, np.diff(cuts) > 1e-9 * half]
    cuts = cuts[keep]
    cuts[-1] = hi
    # absolute floor keeps near-zero pieces from chasing round-off
    floor = 1e-12 * float(np.max(f(cuts))) * half
    core = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        core += integrate.quad(lambda w: float(f(w)), a, b, limit=200,
                               epsabs=floor, epsrel=1e-9)[0]
    tail = float(f(lo)) * half + float(f(hi)) * half
    return (core + tail) / (2 * np.pi)
