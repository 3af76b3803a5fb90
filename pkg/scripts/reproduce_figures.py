"""Regenerate every figure-style sweep as CSV + SVG and report window counts.

    python3 scripts/reproduce_figures.py [--out figures] [--workers 4] [--only fig1a fig3a]
"""
from __future__ import annotations

import argparse
import time
from pathlib import Path

import numpy as np

from ionvit.workbench import run_sweep
from ionvit.workbench.emit import emit_csv, emit_svg
from ionvit.workbench.lineshape import count_transparency_windows
from ionvit.workbench.scenarios import SCENARIOS


def window_summary(ds) -> str:
    y = ds.column(ds.meta["ys"][0])
    group = ds.meta.get("group")
    if not group:
        return f"windows={count_transparency_windows(np.nan_to_num(y))}"
    g = ds.column(group)
    parts = []
    for gv in dict.fromkeys(g.tolist()):
        line = y[g == gv]
        if np.all(np.isfinite(line)):
            parts.append(f"{gv:g}:{count_transparency_windows(line)}")
        else:
            parts.append(f"{gv:g}:pole")
    return f"windows by {group} " + " ".join(parts)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures", type=Path)
    ap.add_argument("--workers", default=1, type=int)
    ap.add_argument("--only", nargs="*", choices=sorted(SCENARIOS))
    args = ap.parse_args(argv)

    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.only or SCENARIOS:
        t0 = time.perf_counter()
        ds = run_sweep(SCENARIOS[name], workers=args.workers)
        emit_csv(ds, args.out / f"{name}.csv")
        emit_svg(ds, args.out / f"{name}.svg", title=name)
        print(f"{name:9s} {len(ds):6d} rows  {time.perf_counter() - t0:5.2f} s  {window_summary(ds)}")


if __name__ == "__main__":
    main()
