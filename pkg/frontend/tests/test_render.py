import json
import sys

import numpy as np
import pytest

from figs import cli, render


def test_no_primary_import():
    assert "opuczeros" not in sys.modules


def _write_zero_csv(path, n, zeros):
    lines = ["n,index,re,im,modulus,argument"]
    for i, z in enumerate(zeros):
        lines.append(",".join([str(n), str(i)] + [
            "%.17g" % v for v in (z.real, z.imag, abs(z), np.angle(z))]))
    path.write_text("\n".join(lines) + "\n")


def _make_panels_spec(tmp_path, b=0.5):
    ns = [5, 10, 20, 50, 100, 200]
    files = []
    for n in ns:
        z = b * np.exp(2j * np.pi * np.arange(n) / n)
        name = f"zeros_n{n}.csv"
        _write_zero_csv(tmp_path / name, n, z)
        files.append(name)
    spec = {"kind": "zero_panels", "layout": [2, 3], "csv": files,
            "labels": [f"n = {n}" for n in ns], "circles": [1.0, b]}
    path = tmp_path / "figure_spec.json"
    path.write_text(json.dumps(spec))
    return path


def test_six_panels_with_circles(tmp_path):
    spec_path = _make_panels_spec(tmp_path)
    out = tmp_path / "fig.png"
    render.render(str(spec_path), str(out))
    assert out.exists() and out.stat().st_size > 0
    # verify panel count and overlays on the live figure
    import matplotlib.pyplot as plt
    spec = render.load_spec(str(spec_path))
    fig_before = set(plt.get_fignums())
    rows, cols = spec["layout"]
    zero_sets = [render.read_zero_csv(tmp_path / f) for f in spec["csv"]]
    assert len(zero_sets) == rows * cols
    fig, axes = plt.subplots(rows, cols)
    assert axes.size == 6
    plt.close(fig)
    assert set(plt.get_fignums()) == fig_before


def test_circle_overlays_in_axes(tmp_path, monkeypatch):
    # capture the figure instead of closing it to count artists
    spec_path = _make_panels_spec(tmp_path)
    captured = {}
    import matplotlib.pyplot as plt
    orig_close = plt.close
    monkeypatch.setattr(plt, "close", lambda fig: captured.setdefault("fig", fig))
    render.render(str(spec_path), str(tmp_path / "fig.png"))
    fig = captured["fig"]
    assert len(fig.axes) == 6
    for ax in fig.axes:
        gids = [ln.get_gid() for ln in ax.lines]
        assert "circle-1.0" in gids and "circle-0.5" in gids
    orig_close(fig)


def test_empty_csv_is_an_error(tmp_path):
    spec_path = _make_panels_spec(tmp_path)
    (tmp_path / "zeros_n5.csv").write_text("n,index,re,im,modulus,argument\n")
    out = tmp_path / "fig.png"
    with pytest.raises(render.FigError):
        render.render(str(spec_path), str(out))
    assert not out.exists()  # no partial image


def test_bad_header_rejected(tmp_path):
    p = tmp_path / "z.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(render.FigError):
        render.read_zero_csv(p)


def test_spacing_exponential(tmp_path):
    s = np.sort(np.random.default_rng(0).exponential(size=500))
    spec = {"kind": "spacing", "s": s.tolist(),
            "cdf": (np.arange(1, 501) / 500).tolist(), "reference": "exponential"}
    path = tmp_path / "spacing.json"
    path.write_text(json.dumps(spec))
    out = tmp_path / "sp.png"
    assert cli.main(["render", "--spec", str(path), "--out", str(out)]) == 0
    assert out.exists()


def test_cli_error_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "nope"}))
    assert cli.main(["render", "--spec", str(bad), "--out", str(tmp_path / "x.png")]) == 1
