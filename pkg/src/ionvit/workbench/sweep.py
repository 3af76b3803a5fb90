"""Parameter sweeps over one or two axes.

Rows are ordered axis2-major, axis1-minor. Each axis2 value is one
independent line evaluated with vectorized closed forms, so fanning the
lines out over worker processes cannot change any value.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..model import ModelParams, response_intensity, steady_state
from ..spectra import collective_spectrum, spectral_poles, spectrum_series, vib_spectrum

AXIS_NAMES = ("delta", "omega", "g_a", "g_b", "gamma_a", "gamma_b")
PARAM_AXES = ("g_a", "g_b", "gamma_a", "gamma_b")


class Quantity(str, enum.Enum):
    RESPONSE_A = "ResponseA"
    RESPONSE_B = "ResponseB"
    SPECTRUM_A = "SpectrumA"
    SPECTRUM_B = "SpectrumB"
    SPECTRUM_C = "SpectrumC"

    @classmethod
    def parse(cls, value) -> "Quantity":
        if isinstance(value, cls):
            return value
        for q in cls:
            if q.value.lower() == str(value).lower():
                return q
        raise ValueError(f"unknown quantity {value!r}; choose from {[q.value for q in cls]}")

    @property
    def is_response(self) -> bool:
        return self in (Quantity.RESPONSE_A, Quantity.RESPONSE_B)

    @property
    def column(self) -> str:
        return {
            Quantity.RESPONSE_A: "abs2_A",
            Quantity.RESPONSE_B: "abs2_B",
            Quantity.SPECTRUM_A: "S_A",
            Quantity.SPECTRUM_B: "S_B",
            Quantity.SPECTRUM_C: "S_c",
        }[self]


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis name {self.name!r} not in {AXIS_NAMES}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("axis needs n >= 2 points")
        if not self.lo < self.hi:
            raise ValueError("axis needs lo < hi")

    @classmethod
    def parse(cls, name: str, text: str) -> "Axis":
        """Build from ``lo:hi:n``."""
        try:
            lo, hi, n = text.split(":")
            return cls(name, float(lo), float(hi), int(n))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad range {text!r} for {name}; expected lo:hi:n ({exc})") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, int(self.n))


@dataclass(frozen=True)
class SweepSpec:
    base: ModelParams
    axis1: Axis
    quantity: Quantity
    axis2: Axis | None = None
    delta: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "quantity", Quantity.parse(self.quantity))
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise ValueError("axis1 and axis2 must differ")
        names = {self.axis1.name} | ({self.axis2.name} if self.axis2 else set())
        if self.quantity.is_response and "omega" in names:
            raise ValueError("response quantities do not depend on omega")
        for ax in (self.axis1, self.axis2):
            if ax is not None and ax.name in ("gamma_a", "gamma_b") and ax.lo <= 0:
                raise ValueError(f"{ax.name} axis must stay positive")
            if ax is not None and ax.name in ("g_a", "g_b") and ax.lo < 0:
                raise ValueError(f"{ax.name} axis must be non-negative")


@dataclass
class Dataset:
    """Column-named table; ``None`` marks an omitted value."""

    columns: tuple
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([np.nan if r[i] is None else r[i] for r in self.rows], dtype=float)


def evaluate_line(p: ModelParams, quantity: Quantity, axis: str, values: np.ndarray,
                  fixed: dict) -> tuple:
    """``quantity`` along one axis; returns ``(values, pole_mask)``."""
    quantity = Quantity.parse(quantity)
    delta = fixed.get("delta", 0.0)
    omega = fixed.get("omega", 0.0)
    if axis in PARAM_AXES:
        out = np.empty(values.shape)
        pole = np.zeros(values.shape, dtype=bool)
        for i, v in enumerate(values):
            o, pl = evaluate_line(p.with_(**{axis: float(v)}), quantity, "delta",
                                  np.array([delta]), {"omega": omega})
            out[i], pole[i] = o[0], pl[0]
        return out, pole
    if quantity.is_response:
        if axis != "delta":
            raise ValueError("response quantities are swept over delta or model parameters")
        s = steady_state(p, values)
        ia, ib = response_intensity(s, p.chi)
        return (ia if quantity is Quantity.RESPONSE_A else ib), np.asarray(s.pole)
    if axis == "delta":
        # fixed omega, varying detuning: evaluate point by point
        out = np.array([_spectrum(p, quantity, float(d), np.array([omega]))[0] for d in values])
        pole = np.array([spectral_poles(p, float(d), np.array([omega]))[0] for d in values])
        return out, pole
    return _spectrum(p, quantity, delta, values), spectral_poles(p, delta, values)


def _spectrum(p, quantity, delta, omega):
    if quantity is Quantity.SPECTRUM_A:
        return collective_spectrum(p, delta, omega, "A")
    if quantity is Quantity.SPECTRUM_B:
        return collective_spectrum(p, delta, omega, "B")
    return vib_spectrum(p, delta, omega)


def _line_task(args):
    spec, a2_name, a2_value = args
    p = spec.base
    fixed = {"delta": spec.delta, "omega": spec.omega}
    if a2_name is not None:
        if a2_name in PARAM_AXES:
            p = p.with_(**{a2_name: float(a2_value)})
        else:
            fixed[a2_name] = float(a2_value)
    return evaluate_line(p, spec.quantity, spec.axis1.name, spec.axis1.values(), fixed)


def run_sweep(spec: SweepSpec, workers: int = 1) -> Dataset:
    """Evaluate ``spec``; pole points are kept with the value omitted."""
    a1 = spec.axis1.values()
    if spec.axis2 is None:
        tasks = [(spec, None, None)]
        a2 = [None]
    else:
        a2 = list(spec.axis2.values())
        tasks = [(spec, spec.axis2.name, v) for v in a2]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            lines = list(pool.map(_line_task, tasks))
    else:
        lines = [_line_task(t) for t in tasks]

    cols = ((spec.axis2.name,) if spec.axis2 else ()) + (spec.axis1.name, spec.quantity.column, "pole")
    ds = Dataset(cols, meta={"x": spec.axis1.name, "ys": [spec.quantity.column],
                             "group": spec.axis2.name if spec.axis2 else None})
    for v2, (vals, poles) in zip(a2, lines):
        for x, y, pl in zip(a1, vals, poles):
            head = (float(v2),) if spec.axis2 else ()
            ds.rows.append(head + (float(x), None if pl else float(y), bool(pl)))
    return ds


def response_dataset(p: ModelParams, deltas) -> Dataset:
    """Full steady-state table on a detuning grid."""
    deltas = np.asarray(deltas, dtype=float)
    s = steady_state(p, deltas)
    ia, ib = response_intensity(s, p.chi)
    cols = ("delta", "abs2_A", "abs2_B", "re_A", "im_A", "re_B", "im_B", "re_c", "im_c", "pole")
    ds = Dataset(cols, meta={"x": "delta", "ys": ["abs2_A", "abs2_B"]})
    pole = np.broadcast_to(s.pole, deltas.shape)
    for i, d in enumerate(deltas):
        if pole[i]:
            ds.rows.append((float(d),) + (None,) * 8 + (True,))
            continue
        ds.rows.append((float(d), float(ia[i]), float(ib[i]),
                        float(s.a_s[i].real), float(s.a_s[i].imag),
                        float(s.b_s[i].real), float(s.b_s[i].imag),
                        float(s.c_s[i].real), float(s.c_s[i].imag), False))
    return ds


def fluctuation_dataset(p: ModelParams, delta: float, omegas) -> Dataset:
    ser = spectrum_series(p, delta, omegas)
    ds = Dataset(("omega", "S_A", "S_B", "S_c"), meta={"x": "omega", "ys": ["S_A", "S_B", "S_c"]})
    for row in zip(ser.omega, ser.s_a, ser.s_b, ser.s_c):
        ds.rows.append(tuple(float(v) for v in row))
    return ds
