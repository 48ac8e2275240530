"""Static SVG figures for a finished run: front scatter, weights on the simplex, metric curves."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from adaptscal.errors import UnsupportedDimensionError
from adaptscal.problems import Lame, get_problem

PANEL = 320
MARGIN = 48
COLORS = {"energy": "#1f77b4", "igd": "#d62728"}


class Canvas:
    def __init__(self, width, height):
        self.width, self.height = width, height
        self.items = []

    def add(self, tag, text=None, **attrs):
        attr = " ".join(f'{k.rstrip("_").replace("_", "-")}="{escape(str(v))}"' for k, v in attrs.items())
        if text is None:
            self.items.append(f"<{tag} {attr}/>")
        else:
            self.items.append(f"<{tag} {attr}>{escape(text)}</{tag}>")

    def raw(self, s):
        self.items.append(s)

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif" font-size="11">'
        )
        body = "\n".join(self.items)
        return f'<?xml version="1.0" encoding="UTF-8"?>\n{head}\n<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'


def _fmt(v):
    return f"{v:.4g}"


class Panel:
    """Axis box mapping data coordinates into a square region of a canvas."""

    def __init__(self, canvas, x0, y0, xlim, ylim, xlabel="", ylabel="", logy=False, size=PANEL):
        self.c, self.x0, self.y0, self.size = canvas, x0, y0, size
        self.logy = logy
        self.xlim = xlim
        self.ylim = (math.log10(ylim[0]), math.log10(ylim[1])) if logy else ylim
        self._axes(xlabel, ylabel)

    def px(self, x, y):
        (a, b), (lo, hi) = self.xlim, self.ylim
        if self.logy:
            y = math.log10(max(y, 10.0**lo))
        u = self.x0 + (x - a) / ((b - a) or 1.0) * self.size
        v = self.y0 + self.size - (y - lo) / ((hi - lo) or 1.0) * self.size
        return u, v

    def _axes(self, xlabel, ylabel):
        c, s = self.c, self.size
        c.add("rect", x=self.x0, y=self.y0, width=s, height=s, fill="none", stroke="black")
        for t in np.linspace(0.0, 1.0, 5):
            xv = self.xlim[0] + t * (self.xlim[1] - self.xlim[0])
            u = self.x0 + t * s
            c.add("line", x1=_fmt(u), y1=self.y0 + s, x2=_fmt(u), y2=self.y0 + s + 4, stroke="black")
            c.add("text", _fmt(xv), x=_fmt(u), y=self.y0 + s + 16, text_anchor="middle")
            yv = self.ylim[0] + t * (self.ylim[1] - self.ylim[0])
            label = _fmt(10.0**yv) if self.logy else _fmt(yv)
            v = self.y0 + s - t * s
            c.add("line", x1=self.x0 - 4, y1=_fmt(v), x2=self.x0, y2=_fmt(v), stroke="black")
            c.add("text", label, x=self.x0 - 6, y=_fmt(v + 3), text_anchor="end")
        c.add("text", xlabel, x=self.x0 + s / 2, y=self.y0 + s + 32, text_anchor="middle")
        c.add("text", ylabel, x=self.x0 - 38, y=self.y0 + s / 2, text_anchor="middle",
              transform=f"rotate(-90 {self.x0 - 38} {self.y0 + s / 2})")

    def polyline(self, xs, ys, **style):
        pts = " ".join(f"{_fmt(u)},{_fmt(v)}" for u, v in (self.px(x, y) for x, y in zip(xs, ys)))
        self.c.add("polyline", points=pts, fill="none", **style)

    def markers(self, xs, ys, cls="marker", r=3.5, fill="#1f77b4", **style):
        (a, b), (lo, hi) = self.xlim, self.ylim
        for x, y in zip(xs, ys):
            yy = math.log10(max(y, 1e-300)) if self.logy else y
            inside = a <= x <= b and lo <= yy <= hi
            x = min(max(x, a), b)
            y = min(max(y, 10.0**lo), 10.0**hi) if self.logy else min(max(y, lo), hi)
            u, v = self.px(x, y)
            self.c.add("circle", class_=cls if inside else f"{cls} outside", cx=_fmt(u), cy=_fmt(v), r=r,
                       fill=fill if inside else "none", stroke=fill, **style)


def _limits(values, pad=0.05):
    lo, hi = float(np.min(values)), float(np.max(values))
    span = (hi - lo) or 1.0
    return lo - pad * span, hi + pad * span


def front_svg(problem, F, reference=None) -> str:
    m = problem.m
    if m not in (2, 3):
        raise UnsupportedDimensionError(f"plotting supports m = 2 or 3, got m = {m}")
    if reference is None:
        reference = problem.sample_front_reference(400, np.random.default_rng(0))
    lim = [_limits(reference[:, l]) for l in range(m)]
    pairs = [(0, 1)] if m == 2 else [(0, 1), (0, 2), (1, 2)]
    canvas = Canvas(len(pairs) * (PANEL + 2 * MARGIN), PANEL + 2 * MARGIN)
    for p_idx, (a, b) in enumerate(pairs):
        panel = Panel(canvas, MARGIN + p_idx * (PANEL + 2 * MARGIN), MARGIN, lim[a], lim[b],
                      f"f{a + 1}", f"f{b + 1}")
        if m == 2 and isinstance(problem, Lame):
            curve = problem.front_curve(200)
            panel.polyline(curve[:, 0], curve[:, 1], class_="front", stroke="#999999", stroke_width=1.5)
        elif m == 3:
            panel.markers(reference[:, a], reference[:, b], cls="reference", r=1.0, fill="#cccccc")
        panel.markers(F[:, a], F[:, b])
    return canvas.render()


def simplex_svg(W) -> str:
    W = np.asarray(W, dtype=np.float64)
    m = W.shape[1]
    if m not in (2, 3):
        raise UnsupportedDimensionError(f"plotting supports m = 2 or 3, got m = {m}")
    size = PANEL + 2 * MARGIN
    canvas = Canvas(size, size if m == 3 else 120)
    if m == 2:
        y = 60
        canvas.add("line", x1=MARGIN, y1=y, x2=MARGIN + PANEL, y2=y, stroke="black")
        canvas.add("text", "w = (0, 1)", x=MARGIN, y=y + 24, text_anchor="middle")
        canvas.add("text", "w = (1, 0)", x=MARGIN + PANEL, y=y + 24, text_anchor="middle")
        for w1 in W[:, 0]:
            canvas.add("circle", class_="marker", cx=_fmt(MARGIN + w1 * PANEL), cy=y, r=4,
                       fill="#1f77b4", fill_opacity="0.6")
        return canvas.render()
    h = PANEL * math.sqrt(3) / 2
    verts = np.array([[MARGIN, MARGIN + h], [MARGIN + PANEL, MARGIN + h], [MARGIN + PANEL / 2, MARGIN]])
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in verts)
    canvas.add("polygon", points=pts, fill="none", stroke="black")
    for label, (x, y), dy in zip(("w1", "w2", "w3"), verts, (16, 16, -6)):
        canvas.add("text", label, x=_fmt(x), y=_fmt(y + dy), text_anchor="middle")
    for x, y in W @ verts:
        canvas.add("circle", class_="marker", cx=_fmt(x), cy=_fmt(y), r=3.5, fill="#1f77b4", fill_opacity="0.6")
    return canvas.render()


def metrics_svg(k, energy, igd) -> str:
    series = {"energy": np.asarray(energy, dtype=np.float64), "igd": np.asarray(igd, dtype=np.float64)}
    allv = np.concatenate(list(series.values()))
    pos = allv[allv > 0.0]
    lo = float(pos.min()) if pos.size else 1e-12
    hi = float(allv.max()) if allv.size and allv.max() > 0 else 1.0
    if hi <= lo:
        hi = lo * 10.0
    ylim = (lo / 1.2, hi * 1.2)
    width = PANEL + 2 * MARGIN + 140
    canvas = Canvas(width, PANEL + 2 * MARGIN)
    xlim = (0.0, float(max(k[-1], 1)))
    canvas.raw(f'<g class="plot" data-ymin="{ylim[0]!r}" data-ymax="{ylim[1]!r}">')
    panel = Panel(canvas, MARGIN, MARGIN, xlim, ylim, "adaptation step k", "value (log scale)",
                  logy=True)
    for name, vals in series.items():
        panel.polyline(k, vals, class_=f"series {name}", stroke=COLORS[name], stroke_width=1.5)
    canvas.raw("</g>")
    for j, name in enumerate(series):
        y = MARGIN + 14 + 18 * j
        canvas.add("line", x1=MARGIN + PANEL + 16, y1=y, x2=MARGIN + PANEL + 40, y2=y, stroke=COLORS[name],
                   stroke_width=2)
        canvas.add("text", "Morse energy" if name == "energy" else "IGD", x=MARGIN + PANEL + 46, y=y + 4)
    return canvas.render()


def plot_svg(run: dict, directory) -> list[Path]:
    """Write ``front.svg``, ``simplex.svg`` and ``metrics.svg`` for a loaded run (see ``output.load_run``)."""
    directory = Path(directory)
    problem = get_problem(run["meta"]["config"]["problem"])
    if problem.m not in (2, 3):
        raise UnsupportedDimensionError(f"plotting supports m = 2 or 3, got m = {problem.m}")
    files = {
        "front.svg": front_svg(problem, run["front"]["f"]),
        "simplex.svg": simplex_svg(run["front"]["w"]),
        "metrics.svg": metrics_svg(run["metrics"]["k"], run["metrics"]["energy"], run["metrics"]["igd"]),
    }
    paths = []
    for name, text in files.items():
        path = directory / name
        path.write_text(text)
        paths.append(path)
    return paths
