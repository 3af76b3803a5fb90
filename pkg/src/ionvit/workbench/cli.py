"""Command-line front end: ``ionvit {response,fluctuation,sweep,stability,dressed}``.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 4 I/O.
"""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np
import yaml

from .. import oracle
from ..dressed import build_basis, build_hamiltonian, dressed_pair
from ..model import Case, ModelParams
from .emit import csv_text, emit_csv, emit_json, emit_svg
from .scenarios import SCENARIOS, scenario
from .sweep import Axis, Dataset, SweepSpec, fluctuation_dataset, response_dataset, run_sweep

log = logging.getLogger("ionvit")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

PARAM_KEYS = ("case", "g_a", "g_b", "gamma_a", "gamma_b", "kappa", "chi", "n_vib", "n_eg")
DEFAULTS = {
    "case": "red", "g_a": 0.0, "g_b": 0.0, "gamma_a": 1.0, "gamma_b": 1.0,
    "kappa": 1.0, "chi": 1.0, "n_vib": 0.0, "n_eg": 0.0,
    "delta": None, "omega": 0.0,
    "delta_range": "-20:20:2001", "omega_range": "-20:20:2001",
    "workers": 1, "cap": None, "strict": False,
}
CONFIG_KEYS = set(DEFAULTS) | {"out", "svg", "quantity", "axis1", "axis2", "scenario"}


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


def _common(parser: argparse.ArgumentParser):
    g = parser.add_argument_group("model")
    g.add_argument("--case", choices=["red", "blue"])
    for flag in ("g-a", "g-b", "gamma-a", "gamma-b", "kappa", "chi", "n-vib", "n-eg"):
        g.add_argument(f"--{flag}", type=float)
    parser.add_argument("--delta", type=float, help="fixed detuning")
    parser.add_argument("--delta-range", metavar="LO:HI:N",
                        help="detuning grid; write --delta-range=-20:20:2001 for negative LO")
    parser.add_argument("--omega-range", metavar="LO:HI:N",
                        help="frequency grid; write --omega-range=-20:20:2001 for negative LO")
    parser.add_argument("--out", metavar="FILE.csv")
    parser.add_argument("--svg", metavar="FILE.svg")
    parser.add_argument("--config", metavar="FILE", help="flat YAML/JSON mapping of flag values")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--strict", action="store_true", default=None,
                        help="fail (exit 3) on poles or unstable fluctuation systems")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ionvit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("response", help="steady-state response vs detuning")
    _common(p)

    p = sub.add_parser("fluctuation", help="fluctuation spectra vs omega at fixed detuning")
    _common(p)
    p.add_argument("--check-oracle", action="store_true",
                   help="cross-check against the transfer-matrix oracle")

    p = sub.add_parser("sweep", help="one- or two-axis parameter sweep")
    _common(p)
    p.add_argument("--scenario", choices=sorted(SCENARIOS))
    p.add_argument("--quantity", help="ResponseA|ResponseB|SpectrumA|SpectrumB|SpectrumC")
    p.add_argument("--axis1", metavar="NAME:LO:HI:N")
    p.add_argument("--axis2", metavar="NAME:LO:HI:N")
    p.add_argument("--omega", type=float, help="fixed omega for spectra swept over parameters")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("stability", help="drift-matrix stability of the fluctuation system")
    _common(p)

    p = sub.add_parser("dressed", help="truncated-Fock Hamiltonian and dressed pair (JSON)")
    _common(p)
    p.add_argument("--cap", type=int)
    return ap


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        raise UsageError(f"config {path} is not valid YAML/JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a flat mapping")
    cfg = {}
    for k, v in data.items():
        key = str(k).replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {k!r}")
        if isinstance(v, (dict, list)):
            raise UsageError(f"config key {k!r} must hold a scalar")
        cfg[key] = v
    return cfg


def _settings(args) -> dict:
    """Defaults, overridden by the config file, overridden by flags."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_load_config(args.config))
    for k, v in vars(args).items():
        if v is not None and k not in ("config", "command", "verbose"):
            merged[k] = v
    return merged


def _params(s: dict) -> ModelParams:
    try:
        return ModelParams(**{k: (s[k] if k == "case" else float(s[k])) for k in PARAM_KEYS})
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _range(name: str, text) -> np.ndarray:
    try:
        return Axis.parse(name, str(text)).values()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _axis(text) -> Axis:
    try:
        name, rest = str(text).split(":", 1)
        return Axis.parse(name, rest)
    except ValueError as exc:
        raise UsageError(f"bad axis {text!r}: {exc}") from None


def _output(ds: Dataset, s: dict, title: str | None = None):
    if s.get("out"):
        emit_csv(ds, s["out"])
    else:
        sys.stdout.write(csv_text(ds))
    if s.get("svg"):
        emit_svg(ds, s["svg"], title=title)


def _check_poles(ds: Dataset, s: dict):
    n = sum(1 for r in ds.rows if r[-1] is True)
    if n:
        log.warning("%d pole row(s) emitted without values", n)
        if s["strict"]:
            raise NumericalFailure(f"{n} pole(s) inside the requested range")


def _delta(s) -> float:
    return 0.0 if s["delta"] is None else float(s["delta"])


def cmd_response(s):
    p = _params(s)
    ds = response_dataset(p, _range("delta", s["delta_range"]))
    _check_poles(ds, s)
    _output(ds, s, title=f"{p.case.value} response")


def cmd_fluctuation(s):
    p = _params(s)
    delta = _delta(s)
    omegas = _range("omega", s["omega_range"])
    fluct = oracle.build_fluctuation(p, delta)
    rep = oracle.stability(fluct)
    if not rep.stable:
        log.warning("fluctuation system unstable (max Re(eig) = %.6g); spectra are formal",
                    rep.max_real_eig)
        if s["strict"] or s.get("check_oracle"):
            raise NumericalFailure(f"unstable fluctuation system (max Re(eig) = {rep.max_real_eig:.6g})")
    ds = fluctuation_dataset(p, delta, omegas)
    if s.get("check_oracle"):
        ref = oracle.spectrum_matrix(fluct, omegas)
        got = np.stack([ds.column(c) for c in ("S_A", "S_B", "S_c")], axis=-1)
        err = float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300)))
        log.info("max relative deviation from oracle: %.3e", err)
        if err > 1e-8:
            raise NumericalFailure(f"closed form deviates from oracle by {err:.3e}")
    _output(ds, s, title=f"{p.case.value} fluctuation spectra")


def cmd_sweep(s):
    if s.get("scenario"):
        spec = scenario(s["scenario"])
    else:
        if not s.get("quantity") or not s.get("axis1"):
            raise UsageError("sweep needs --scenario or both --quantity and --axis1")
        try:
            spec = SweepSpec(_params(s), _axis(s["axis1"]), s["quantity"],
                             _axis(s["axis2"]) if s.get("axis2") else None,
                             delta=_delta(s), omega=float(s["omega"]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    workers = int(s["workers"])
    if workers < 1:
        raise UsageError("--workers must be >= 1")
    ds = run_sweep(spec, workers=workers)
    _check_poles(ds, s)
    _output(ds, s, title=s.get("scenario") or spec.quantity.value)


def cmd_stability(s):
    p = _params(s)
    if s["delta"] is not None:
        deltas = np.array([float(s["delta"])])
    else:
        deltas = _range("delta", s["delta_range"])
    ds = Dataset(("case", "delta", "max_real_eig", "stable"),
                 meta={"x": "delta", "ys": ["max_real_eig"]})
    for d in deltas:
        rep = oracle.stability(oracle.build_fluctuation(p, float(d)))
        ds.rows.append((p.case.value, float(d), rep.max_real_eig, rep.stable))
    if s["strict"] and not all(r[-1] for r in ds.rows):
        _output(ds, s)
        raise NumericalFailure("unstable points present")
    _output(ds, s, title=f"{p.case.value} stability")


def _cplx(z):
    return [float(np.real(z)), float(np.imag(z))]


def cmd_dressed(s):
    p = _params(s)
    delta = _delta(s)
    basis = build_basis(p.case, s["cap"])
    ham = build_hamiltonian(p, delta, basis, include_drive=True)
    doc = {
        "case": p.case.value,
        "delta": delta,
        "basis": [st.ket() for st in basis],
        "hamiltonian": [[_cplx(z) for z in row] for row in ham.matrix],
    }
    if p.g_a == 0:
        vals, vecs, states = dressed_pair(p, delta)
        doc["pair"] = {
            "states": [st.ket() for st in states],
            "eigenvalues": [float(v) for v in vals],
            "eigenvectors": [[_cplx(z) for z in vecs[:, k]] for k in range(vecs.shape[1])],
        }
    text = emit_json(doc, s.get("out"))
    if not s.get("out"):
        sys.stdout.write(text)


COMMANDS = {
    "response": cmd_response,
    "fluctuation": cmd_fluctuation,
    "sweep": cmd_sweep,
    "stability": cmd_stability,
    "dressed": cmd_dressed,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        s = _settings(args)
        s["case"] = Case.parse(s["case"]).value
        COMMANDS[args.command](s)
    except (NumericalFailure, ArithmeticError) as exc:
        print(f"ionvit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError) as exc:
        print(f"ionvit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ionvit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
