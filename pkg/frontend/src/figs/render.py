"""Pure file-to-image rendering.

Input formats:

* zero CSV: header ``n,index,re,im,modulus,argument``, one zero per row.
* figure spec JSON: ``{"kind": "zero_panels", "layout": [r, c],
  "csv": [...], "labels": [...], "circles": [radii]}``; CSV paths are
  relative to the spec file.
* spacing JSON: ``{"kind": "spacing", "s": [...], "cdf": [...],
  "reference": "exponential" | "clock"}``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


class FigError(ValueError):
    pass


ZERO_HEADER = ["n", "index", "re", "im", "modulus", "argument"]


def read_zero_csv(path: Path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ZERO_HEADER:
        raise FigError(f"{path}: expected header {','.join(ZERO_HEADER)}")
    if len(rows) < 2:
        raise FigError(f"{path}: no zeros")
    data = np.array([[float(r[2]), float(r[3])] for r in rows[1:]])
    return data[:, 0] + 1j * data[:, 1]


def load_spec(path: str) -> dict:
    p = Path(path)
    spec = json.loads(p.read_text())
    if not isinstance(spec, dict) or "kind" not in spec:
        raise FigError(f"{path}: spec must be a JSON object with a 'kind' field")
    spec["_base"] = p.parent
    return spec


def render_zero_panels(spec: dict, out: str) -> None:
    rows, cols = spec.get("layout", [2, 3])
    files = spec["csv"]
    if len(files) != rows * cols:
        raise FigError(f"layout {rows}x{cols} needs {rows * cols} CSV files, got {len(files)}")
    labels = spec.get("labels", files)
    circles = [float(r) for r in spec.get("circles", [1.0])]
    base = spec.get("_base", Path("."))
    # parse everything up front so a bad file cannot leave a partial image
    zero_sets = [read_zero_csv(base / f) for f in files]

    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 3.2 * rows))
    phi = np.linspace(0, 2 * np.pi, 361)
    for ax, z, label in zip(np.ravel(axes), zero_sets, labels):
        ax.scatter(z.real, z.imag, s=6, color="k", zorder=3)
        for r in circles:
            ax.plot(r * np.cos(phi), r * np.sin(phi), lw=0.7, color="0.6",
                    gid=f"circle-{r}")
        ax.set_aspect("equal")
        lim = max(1.05, np.max(np.abs(z)) * 1.05)
        ax.set_xlim(-lim, lim)
        ax.set_ylim(-lim, lim)
        ax.set_title(label, fontsize=9)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def render_spacing_hist(spec: dict, out: str) -> None:
    s = np.asarray(spec["s"], dtype=float)
    cdf = np.asarray(spec["cdf"], dtype=float)
    if s.size == 0 or s.shape != cdf.shape:
        raise FigError("spacing spec needs matching nonempty 's' and 'cdf' arrays")
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(s, cdf, drawstyle="steps-post", color="k", label="empirical")
    ref = spec.get("reference", "exponential")
    grid = np.linspace(0, max(3.0, s.max()), 300)
    if ref == "exponential":
        ax.plot(grid, 1 - np.exp(-grid), "--", color="0.5", label="1 - exp(-s)", gid="ref")
    elif ref == "clock":
        ax.plot([0, 1, 1, grid[-1]], [0, 0, 1, 1], "--", color="0.5",
                label="step at 1", gid="ref")
    else:
        raise FigError(f"unknown reference {ref!r}")
    ax.set_xlabel("scaled spacing s")
    ax.set_ylabel("CDF")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def render(spec_path: str, out: str) -> None:
    spec = load_spec(spec_path)
    if spec["kind"] == "zero_panels":
        render_zero_panels(spec, out)
    elif spec["kind"] == "spacing":
        render_spacing_hist(spec, out)
    else:
        raise FigError(f"unknown spec kind {spec['kind']!r}")
