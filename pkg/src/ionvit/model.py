"""Model parameters and closed-form steady states.

All rates are in units of the vibrational heating rate ``kappa`` (default 1).
Every function accepting ``delta`` broadcasts over numpy arrays.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

#: Blue-case denominators below ``POLE_TOL * kappa`` are flagged as poles.
POLE_TOL = 1e-8


class Case(str, enum.Enum):
    """Sideband the addressing laser is tuned to."""

    RED = "red"
    BLUE = "blue"

    @classmethod
    def parse(cls, value: "Case | str") -> "Case":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown case {value!r}; expected 'red' or 'blue'") from None


@dataclass(frozen=True)
class MicroscopicParams:
    """Ion-level inputs that fix the effective couplings.

    Only ``n_ions_a``, ``n_ions_b``, ``drive_amplitude``, ``rabi`` and
    ``lamb_dicke`` enter the effective model; the remaining frequencies are
    recorded for bookkeeping and validated for positivity.
    """

    n_ions_a: int
    n_ions_b: int
    drive_amplitude: float
    rabi: float
    lamb_dicke: float
    trap_freq: float = 1.0
    transition_freq: float = 1.0
    laser_freq: float = 1.0
    probe_freq: float = 1.0

    def __post_init__(self):
        for name in ("n_ions_a", "n_ions_b"):
            n = getattr(self, name)
            if int(n) != n or n < 1:
                raise ValueError(f"{name} must be a positive integer, got {n!r}")
        if not 0.0 < self.lamb_dicke <= 0.3:
            raise ValueError(f"lamb_dicke must lie in (0, 0.3], got {self.lamb_dicke!r}")
        for name in ("drive_amplitude", "rabi", "trap_freq", "transition_freq",
                     "laser_freq", "probe_freq"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite frequency, got {v!r}")


@dataclass(frozen=True)
class Couplings:
    g_a: float
    g_b: float
    chi: float


def effective_params(micro: MicroscopicParams) -> Couplings:
    """Collective couplings: ``chi = sqrt(N_a) eps`` and ``g_y = eta sqrt(N_y) Omega``."""
    G_a = math.sqrt(micro.n_ions_a) * micro.rabi
    G_b = math.sqrt(micro.n_ions_b) * micro.rabi
    return Couplings(
        g_a=micro.lamb_dicke * G_a,
        g_b=micro.lamb_dicke * G_b,
        chi=math.sqrt(micro.n_ions_a) * micro.drive_amplitude,
    )


@dataclass(frozen=True)
class ModelParams:
    """Effective bosonic model.

    Attributes
    ----------
    case : Case
        Red (beam-splitter) or blue (parametric) coupling to the vibration.
    g_a, g_b : float
        Couplings of the collective modes A (driven) and B to the vibration.
    gamma_a, gamma_b : float
        Collective decay rates.
    kappa : float
        Vibrational heating rate; the frequency unit.
    chi : float
        Probe drive strength on mode A.
    n_vib, n_eg : float
        Thermal occupations of the vibrational bath and the ionic baths.
    """

    case: Case = Case.RED
    g_a: float = 0.0
    g_b: float = 0.0
    gamma_a: float = 1.0
    gamma_b: float = 1.0
    kappa: float = 1.0
    chi: float = 1.0
    n_vib: float = 0.0
    n_eg: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "case", Case.parse(self.case))
        for name in ("g_a", "g_b", "gamma_a", "gamma_b", "kappa", "chi", "n_vib", "n_eg"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)):
                raise TypeError(f"{name} must be a real number, got {v!r}")
            v = float(v)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v!r}")
            object.__setattr__(self, name, v)
        for name in ("gamma_a", "gamma_b", "kappa"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def decoupled(self) -> "ModelParams":
        return replace(self, g_a=0.0, g_b=0.0)


@dataclass(frozen=True)
class EffectiveQuantities:
    """Dressed quantities at detuning ``delta``.

    For the blue case the primed quantities (``2 kappa - kappa_eff`` etc.)
    are stored in the same fields.
    """

    case: Case
    f_a: np.ndarray
    f_b: np.ndarray
    F_A: np.ndarray
    delta_eff: np.ndarray
    kappa_eff: np.ndarray


@dataclass(frozen=True)
class SteadyState:
    a_s: np.ndarray
    b_s: np.ndarray
    c_s: np.ndarray
    pole: np.ndarray = field(default_factory=lambda: np.asarray(False))

    def as_vector(self) -> np.ndarray:
        """``(c_s, a_s, b_s)`` stacked on the last axis."""
        return np.stack(np.broadcast_arrays(self.c_s, self.a_s, self.b_s), axis=-1)


def _lorentz_weights(p: ModelParams, delta):
    da = delta**2 + p.gamma_a**2
    db = delta**2 + p.gamma_b**2
    return p.g_a**2 / da, p.g_b**2 / db


def effective_quantities(p: ModelParams, delta) -> EffectiveQuantities:
    delta = np.asarray(delta, dtype=float)
    f_a = p.g_a / (delta - 1j * p.gamma_a)
    f_b = p.g_b / (delta - 1j * p.gamma_b)
    wa, wb = _lorentz_weights(p, delta)
    load = wa * p.gamma_a + wb * p.gamma_b
    if p.case is Case.RED:
        kappa_eff = p.kappa + load
        delta_eff = delta * (1.0 - wa - wb)
        F_A = 1.0 + p.g_a * f_a / (delta_eff - 1j * kappa_eff)
    else:
        kappa_eff = p.kappa - load
        delta_eff = delta * (1.0 + wa + wb)
        with np.errstate(divide="ignore", invalid="ignore"):
            F_A = 1.0 - p.g_a * f_a / (delta_eff - 1j * kappa_eff)
    return EffectiveQuantities(p.case, f_a, f_b, F_A, delta_eff, kappa_eff)


def steady_state(p: ModelParams, delta) -> SteadyState:
    """Mean amplitudes of A, B and the vibrational mode.

    In the blue case, points where ``|delta'_eff - i kappa'_eff|`` falls
    below ``POLE_TOL * kappa`` are flagged in ``pole`` and their amplitudes
    set to NaN. Blue steady states are formal fixed points; check
    ``oracle.stability`` before reading them as physical.
    """
    q = effective_quantities(p, delta)
    delta = np.asarray(delta, dtype=float)
    chi = p.chi
    den = q.delta_eff - 1j * q.kappa_eff
    a_pref = -chi / (delta - 1j * p.gamma_a)
    if p.case is Case.RED:
        pole = np.zeros(np.shape(den), dtype=bool)
        a_s = a_pref * q.F_A
        b_s = -chi * q.f_a * q.f_b / den
        c_s = -1j * chi * q.f_a / den
    else:
        pole = np.abs(den) < POLE_TOL * p.kappa
        with np.errstate(divide="ignore", invalid="ignore"):
            a_s = a_pref * q.F_A
            b_s = chi * q.f_a * q.f_b / den
            c_s = -1j * chi * np.conj(q.f_a) / np.conj(den)
        if pole.any():
            nan = complex(np.nan, np.nan)
            a_s, b_s, c_s = (np.where(pole, nan, x) for x in (a_s, b_s, c_s))
    return SteadyState(a_s, b_s, c_s, pole)


def response_intensity(s: SteadyState, chi: float):
    """``(|A_s/chi|^2, |B_s/chi|^2)``."""
    if not chi > 0:
        raise ValueError("chi must be positive")
    return np.abs(s.a_s / chi) ** 2, np.abs(s.b_s / chi) ** 2


def blue_poles(p: ModelParams, window=(-50.0, 50.0), n_scan: int = 4001) -> list[float]:
    """Real detunings where the blue-case steady state diverges.

    A pole needs ``delta'_eff`` and ``kappa'_eff`` to vanish together. The
    zeros of ``delta'_eff`` are bracketed by a sign scan over ``window`` and
    refined by bisection; those where ``|kappa'_eff|`` is also below
    ``POLE_TOL * kappa`` are returned.
    """
    if p.case is not Case.BLUE:
        raise ValueError("blue_poles requires case=blue")
    lo, hi = window
    if not lo < hi:
        raise ValueError("window must satisfy lo < hi")
    grid = np.linspace(lo, hi, n_scan)

    def dprime(x):
        return float(effective_quantities(p, x).delta_eff)

    vals = effective_quantities(p, grid).delta_eff
    roots = list(grid[vals == 0.0])
    s = np.sign(vals)
    for i in np.nonzero(s[:-1] * s[1:] < 0)[0]:
        roots.append(optimize.bisect(dprime, grid[i], grid[i + 1], xtol=1e-14))
    poles = []
    for r in sorted(roots):
        if abs(float(effective_quantities(p, r).kappa_eff)) < POLE_TOL * p.kappa:
            poles.append(float(r))
    return poles


def pole_coupling(p: ModelParams, lo: float, hi: float, axis: str = "g_a",
                  xtol: float = 1e-12) -> float:
    """Coupling value on ``axis`` where the resonant (delta=0) blue pole sits.

    Bisects ``kappa'_eff(0)`` in the coupling named by ``axis`` on
    ``[lo, hi]``; the bracket must contain a sign change.
    """
    if p.case is not Case.BLUE:
        raise ValueError("pole_coupling requires case=blue")
    if axis not in ("g_a", "g_b", "gamma_a", "gamma_b", "kappa"):
        raise ValueError(f"cannot bisect along {axis!r}")

    def kprime(x):
        return float(effective_quantities(p.with_(**{axis: x}), 0.0).kappa_eff)

    if kprime(lo) * kprime(hi) > 0:
        raise ValueError(f"no sign change of kappa'_eff(0) on [{lo}, {hi}]")
    return optimize.bisect(kprime, lo, hi, xtol=xtol)
