"""Linear-systems oracle built directly from the Langevin equations.

Nothing here calls the closed forms in :mod:`ionvit.model` or
:mod:`ionvit.spectra`; the two routes are compared in the tests.

Mean-field systems are 3-dimensional: ``(c, A, B)`` for the red case and
``(c, A^dag, B^dag)`` for the blue case. Fluctuation systems use the
doubled basis ``(dc, dA, dB, dc^dag, dA^dag, dB^dag)`` driven by the input
noises ``(c_in, A_in, B_in, c_in^dag, A_in^dag, B_in^dag)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import Case, ModelParams, SteadyState

STABILITY_TOL = 1e-12


class SingularSystemError(ArithmeticError):
    """Drift (or resolvent) matrix is numerically singular."""


class InstabilityError(ArithmeticError):
    """Operation needs a stable system, or a trajectory diverged."""


class DriftKind(str, enum.Enum):
    MEAN_RED = "mean_red"
    MEAN_BLUE = "mean_blue"
    FLUCT_RED = "fluct_red"
    FLUCT_BLUE = "fluct_blue"

    @property
    def is_fluctuation(self) -> bool:
        return self in (DriftKind.FLUCT_RED, DriftKind.FLUCT_BLUE)


@dataclass(frozen=True)
class DriftSystem:
    kind: DriftKind
    labels: tuple
    drift: np.ndarray
    drive: np.ndarray
    noise_in: np.ndarray
    noise_corr: np.ndarray

    @property
    def dim(self) -> int:
        return self.drift.shape[0]


@dataclass(frozen=True)
class StabilityReport:
    max_real_eig: float
    stable: bool
    eigenvalues: np.ndarray


def _noise_gains(p: ModelParams) -> np.ndarray:
    return np.sqrt(2.0 * np.array([p.kappa, p.gamma_a, p.gamma_b]))


def build_drift(p: ModelParams, delta: float, kind) -> DriftSystem:
    kind = DriftKind(kind)
    ga, gb, k, ya, yb = p.g_a, p.g_b, p.kappa, p.gamma_a, p.gamma_b
    d = 1j * delta
    gains = _noise_gains(p)

    if kind is DriftKind.MEAN_RED:
        m = np.array([[-d - k, -ga, -gb],
                      [ga, -d - ya, 0],
                      [gb, 0, -d - yb]], dtype=complex)
        b = np.array([0, -1j * p.chi, 0], dtype=complex)
        corr = np.diag([p.n_vib + 1, p.n_eg + 1, p.n_eg + 1])
        return DriftSystem(kind, ("c", "A", "B"), m, b, np.diag(gains).astype(complex), corr)

    if kind is DriftKind.MEAN_BLUE:
        m = np.array([[d - k, ga, gb],
                      [ga, d - ya, 0],
                      [gb, 0, d - yb]], dtype=complex)
        b = np.array([0, 1j * p.chi, 0], dtype=complex)
        corr = np.diag([p.n_vib + 1, p.n_eg, p.n_eg])
        return DriftSystem(kind, ("c", "A+", "B+"), m, b, np.diag(gains).astype(complex), corr)

    diag = np.array([-d - k, -d - ya, -d - yb])
    cross = np.zeros((3, 3))
    if kind is DriftKind.FLUCT_RED:
        same = np.array([[0, -ga, -gb], [ga, 0, 0], [gb, 0, 0]], dtype=complex)
        top_left = np.diag(diag) + same
    else:
        # dc couples to dA^dag, dB^dag and dA, dB couple to dc^dag
        top_left = np.diag([d - k, -d - ya, -d - yb])
        cross = np.array([[0, ga, gb], [ga, 0, 0], [gb, 0, 0]])
    top_left = top_left.astype(complex)
    cross = cross.astype(complex)
    m = np.block([[top_left, cross], [cross.conj(), top_left.conj()]])
    f = np.diag(np.concatenate([gains, gains])).astype(complex)
    nv, ne = p.n_vib, p.n_eg
    corr = np.diag([nv + 1, ne + 1, ne + 1, nv, ne, ne])
    labels = ("c", "A", "B", "c+", "A+", "B+")
    return DriftSystem(kind, labels, m, np.zeros(6, dtype=complex), f, corr)


def build_mean(p: ModelParams, delta: float) -> DriftSystem:
    return build_drift(p, delta, DriftKind.MEAN_RED if p.case is Case.RED else DriftKind.MEAN_BLUE)


def build_fluctuation(p: ModelParams, delta: float) -> DriftSystem:
    return build_drift(p, delta, DriftKind.FLUCT_RED if p.case is Case.RED else DriftKind.FLUCT_BLUE)


def stability(d: DriftSystem) -> StabilityReport:
    eig = np.linalg.eigvals(d.drift)
    mx = float(np.max(eig.real))
    return StabilityReport(mx, mx < -STABILITY_TOL, eig)


def _check_conditioning(m: np.ndarray, what: str, rcond: float = 1e-13):
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= rcond * max(s[0], 1.0):
        raise SingularSystemError(f"{what} is singular (smallest singular value {s[-1]:.3e})")


def steady_state_linear(d: DriftSystem) -> SteadyState:
    """Solve ``M x + b = 0`` and map the solution onto ``(A_s, B_s, c_s)``."""
    _check_conditioning(d.drift, "drift matrix")
    x = -np.linalg.solve(d.drift, d.drive)
    val = dict(zip(d.labels, x))

    def amp(name):
        if name in val:
            return val[name]
        return np.conj(val[name + "+"])

    return SteadyState(a_s=amp("A"), b_s=amp("B"), c_s=amp("c"), pole=np.asarray(False))


def default_dt(p: ModelParams) -> float:
    return 0.01 / max(p.kappa, p.gamma_a, p.gamma_b, p.g_a, p.g_b)


def integrate_mean(d: DriftSystem, x0, t_end: float, dt: float,
                   blowup: float = 1e12, stride: int = 1):
    """Fixed-step RK4 integration of ``dx/dt = M x + b``.

    Returns ``(t, x)`` sampled every ``stride`` steps, always including the
    final step. Raises :class:`InstabilityError` when the state becomes
    non-finite or its norm exceeds ``blowup``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if not t_end > dt:
        raise ValueError("t_end must exceed dt")
    m, b = d.drift, d.drive
    x = np.array(x0, dtype=complex).reshape(d.dim)
    n_steps = int(round(t_end / dt))

    def rhs(y):
        return m @ y + b

    ts, xs = [0.0], [x.copy()]
    for step in range(1, n_steps + 1):
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * dt * k1)
        k3 = rhs(x + 0.5 * dt * k2)
        k4 = rhs(x + dt * k3)
        x = x + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        norm = np.linalg.norm(x)
        if not np.isfinite(norm) or norm > blowup:
            raise InstabilityError(
                f"trajectory diverged at t={step * dt:.6g} (|x|={norm:.3e}); "
                f"max Re(eig) = {stability(d).max_real_eig:.6g}")
        if step % stride == 0 or step == n_steps:
            ts.append(step * dt)
            xs.append(x.copy())
    return np.array(ts), np.array(xs)


def _spectral_index(d: DriftSystem) -> list[int]:
    vib = "c" if d.kind is DriftKind.FLUCT_RED else "c+"
    return [d.labels.index("A"), d.labels.index("B"), d.labels.index(vib)]


def spectrum_matrix(d: DriftSystem, omega) -> np.ndarray:
    """Per-mode spectra ``(S_A, S_B, S_c)`` from the transfer matrix.

    ``T(w) = (-i w - M)^-1 F`` and the spectral matrix is ``T C T^dag``.
    For a blue system the last column is the ``c^dag`` spectrum. Accepts a
    scalar or 1-D ``omega``; the result has shape ``omega.shape + (3,)``.
    """
    if not d.kind.is_fluctuation:
        raise ValueError("spectrum_matrix needs a fluctuation system")
    omega = np.asarray(omega, dtype=float)
    w = np.atleast_1d(omega)
    eye = np.eye(d.dim)
    res = -1j * w[:, None, None] * eye - d.drift
    s = np.linalg.svd(res, compute_uv=False)
    if np.any(s[:, -1] <= 1e-13 * np.maximum(s[:, 0], 1.0)):
        bad = w[np.argmin(s[:, -1])]
        raise SingularSystemError(f"resolvent singular at omega={bad!r}")
    t = np.linalg.solve(res, np.broadcast_to(d.noise_in, res.shape))
    # diag(T C T^dag) with C diagonal
    cdiag = np.real(np.diag(d.noise_corr))
    full = np.einsum("wik,k,wik->wi", t, cdiag, t.conj()).real
    out = full[:, _spectral_index(d)]
    return out.reshape(omega.shape + (3,))


def covariance_lyapunov(d: DriftSystem) -> np.ndarray:
    """Stationary ``V = <dx dx^dag>`` from ``M V + V M^dag + F C F^dag = 0``.

    Solved by vectorization: ``(I (x) M + conj(M) (x) I) vec(V) = -vec(Q)``
    with column-major ``vec``.
    """
    rep = stability(d)
    if not rep.stable:
        raise InstabilityError(
            f"covariance undefined for unstable system (max Re(eig) = {rep.max_real_eig:.6g})")
    m = d.drift
    n = d.dim
    q = d.noise_in @ d.noise_corr @ d.noise_in.conj().T
    eye = np.eye(n)
    op = np.kron(eye, m) + np.kron(m.conj(), eye)
    return np.linalg.solve(op, -q.reshape(-1, order="F")).reshape((n, n), order="F")
