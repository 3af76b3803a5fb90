"""CSV, SVG and JSON writers.

CSV floats use the shortest round-trip decimal (``repr``), so identical
inputs give byte-identical files and every value parses back exactly.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .sweep import Dataset


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def csv_text(ds: Dataset) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ds.columns)
    for row in ds.rows:
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _write(path, text: str):
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_csv(ds: Dataset, path):
    if not len(ds):
        raise ValueError("refusing to write an empty dataset")
    _write(path, csv_text(ds))


def svg_text(ds: Dataset, title: str | None = None) -> str:
    """Line plot of ``ds.meta['ys']`` against ``ds.meta['x']``.

    When ``ds.meta['group']`` names a column, one line is drawn per distinct
    value of it. Omitted (pole) values break the line.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x_name = ds.meta.get("x", ds.columns[0])
    ys = ds.meta.get("ys") or [c for c in ds.columns if c not in (x_name, "pole")]
    group = ds.meta.get("group")
    x = ds.column(x_name)

    with matplotlib.rc_context({"svg.hashsalt": "ionvit", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        if group:
            g = ds.column(group)
            for gv in dict.fromkeys(g.tolist()):
                sel = g == gv
                for y in ys:
                    ax.plot(x[sel], ds.column(y)[sel], lw=1.2, label=f"{group}={gv:g}")
        else:
            for y in ys:
                ax.plot(x, ds.column(y), lw=1.2, label=y)
        ax.set_xlabel(x_name)
        ax.set_ylabel(", ".join(ys))
        if title:
            ax.set_title(title)
        ax.legend(fontsize=7)
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def emit_svg(ds: Dataset, path, title: str | None = None):
    if not len(ds):
        raise ValueError("refusing to plot an empty dataset")
    _write(path, svg_text(ds, title))


def emit_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        _write(path, text)
    return text
