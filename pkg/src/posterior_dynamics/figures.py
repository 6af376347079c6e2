"""File emission for scenario runs: CSV, JSON report, hand-rolled SVG.

CSV is the primary artifact (columns n, psi, log_psi, is_mode,
lc_violation); the SVG is a plain polyline with axis ticks and extremum
markers, emitted without any plotting dependency.  All writes are
atomic (write to a temp name, then rename) and byte-deterministic:
floats are rendered with 17 significant digits and rationals as
canonical "p/q" up to a size cap.
"""

from __future__ import annotations

import json
import math
import os
from importlib import resources

from . import diagnostics as dg
from .engine import ExpectedPosteriorSequence
from .scenario import Scenario, load_scenario, run_scenario, scenario_from_json, scenario_to_json
from .util import format_float

BUNDLED = ("figure1", "figure2", "figure3", "beta71")


def bundled_scenario(name: str) -> Scenario:
    if name not in BUNDLED:
        raise ValueError(f"unknown bundled scenario {name!r}; have {BUNDLED}")
    text = resources.files("posterior_dynamics.scenarios").joinpath(f"{name}.json").read_text()
    return scenario_from_json(json.loads(text), name=name)


def atomic_write(path: str, data: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(data)
    os.replace(tmp, path)


def sequence_csv(seq: ExpectedPosteriorSequence, report: dg.DiagnosticsReport) -> str:
    modes = set(report.modes)
    violations = set(report.logconcavity_violations)
    lines = ["n,psi,log_psi,is_mode,lc_violation"]
    for n, v, lv in zip(seq.ns(), seq.values, seq.log_values):
        lines.append(
            f"{n},{format_float(float(v))},{format_float(lv)},"
            f"{int(n in modes)},{int(n in violations)}"
        )
    return "\n".join(lines) + "\n"


def sequence_report(
    scenario: Scenario, seq: ExpectedPosteriorSequence, report: dg.DiagnosticsReport
) -> dict:
    rationals = seq.rational_strings()
    return {
        "schema": 1,
        "scenario": scenario_to_json(scenario),
        "method": seq.method,
        "repr": seq.representation,
        "diagnostics": report.to_json_dict(),
        "values": [
            {
                "n": n,
                "psi": float(v),
                "log_psi": lv,
                **({"psi_rational": rat} if rat is not None else {}),
            }
            for n, v, lv, rat in zip(seq.ns(), seq.values, seq.log_values, rationals)
        ],
    }


def render_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / max(count - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min(s * mag for s in (1, 2, 5, 10) if s * mag >= raw)
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-12 * step:
        out.append(round(t, 12))
        t += step
    return out or [lo]


def polyline_svg(
    xs: list[float],
    ys: list[float],
    marks: list[tuple[float, float, str]] | None = None,
    x_label: str = "n",
    y_label: str = "psi(n)",
    width: int = 720,
    height: int = 480,
) -> str:
    """Minimal line plot: one polyline, tick marks, optional point labels."""
    pad_l, pad_r, pad_t, pad_b = 72, 24, 24, 48
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    span_x = x_hi - x_lo if x_hi > x_lo else 1.0
    span_y = y_hi - y_lo

    def px(x: float) -> float:
        return pad_l + (x - x_lo) / span_x * (width - pad_l - pad_r)

    def py(y: float) -> float:
        return height - pad_b - (y - y_lo) / span_y * (height - pad_t - pad_b)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad_l}" y1="{height - pad_b}" x2="{width - pad_r}" '
        f'y2="{height - pad_b}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{height - pad_b}" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        parts.append(
            f'<line x1="{x:.2f}" y1="{height - pad_b}" x2="{x:.2f}" '
            f'y2="{height - pad_b + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{height - pad_b + 18}" font-size="11" '
            f'text-anchor="middle">{t:g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{pad_l - 5}" y1="{y:.2f}" x2="{pad_l}" y2="{y:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{pad_l - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">{t:.3g}</text>'
        )
    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    parts.append(f'<polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>')
    for mx, my, label in marks or []:
        parts.append(
            f'<circle cx="{px(mx):.2f}" cy="{py(my):.2f}" r="3.5" fill="#d62728"/>'
        )
        parts.append(
            f'<text x="{px(mx):.2f}" y="{py(my) - 8:.2f}" font-size="11" '
            f'text-anchor="middle">{label}</text>'
        )
    parts.append(
        f'<text x="{(pad_l + width - pad_r) // 2}" y="{height - 10}" font-size="12" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(pad_t + height - pad_b) // 2}" font-size="12" '
        f'text-anchor="middle" transform="rotate(-90 16 {(pad_t + height - pad_b) // 2})">'
        f"{y_label}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def sequence_svg(seq: ExpectedPosteriorSequence, report: dg.DiagnosticsReport) -> str:
    xs = [float(n) for n in seq.ns()]
    ys = seq.float_values()
    marks = []
    for m in report.modes:
        marks.append((float(m), ys[m - 1], f"n={m}"))
    for m in report.minima:
        if m > 1:
            marks.append((float(m), ys[m - 1], f"n={m}"))
    for n_star, kind in report.critical_points:
        idx = min(max(int(round(n_star)), 1), len(ys))
        marks.append((float(idx), ys[idx - 1], f"{kind}~{n_star:.0f}"))
    return polyline_svg(xs, ys, marks)


def emit_scenario_files(scenario: Scenario, outdir: str) -> list[str]:
    """Run one scenario and write its requested outputs; returns paths."""
    os.makedirs(outdir, exist_ok=True)
    seq = run_scenario(scenario)
    report = dg.analyze(seq, prior=scenario.prior)
    written = []
    base = os.path.join(outdir, scenario.name)
    if "csv" in scenario.outputs:
        atomic_write(base + ".csv", sequence_csv(seq, report))
        written.append(base + ".csv")
    if "json" in scenario.outputs:
        atomic_write(base + ".json", render_json(sequence_report(scenario, seq, report)))
        written.append(base + ".json")
    if "svg" in scenario.outputs:
        atomic_write(base + ".svg", sequence_svg(seq, report))
        written.append(base + ".svg")
    return written
