"""Deterministic CSV emission.

Every output starts with a comment block (# key = value, sorted by key)
recording the complete run configuration, so a file is self-describing and
byte-identical across reruns of the same configuration. Floats are printed
with 17 significant digits (lossless round-trip for float64).

Schemas:

* trajectory (and figure 1):  gamma_t,c_phi,c_psi
* sweep (figures 2-6), long format:  param_name,param_value,gamma_t,c_phi,c_psi
* esd:  kind,t_start,t_end  with kind in {terminal_esd, dark_interval,
  touch_point}; touch points have t_start = t_end, the terminal row's
  t_start is the ESD onset and its t_end the scan horizon.
"""

from __future__ import annotations

import math

import numpy as np

from .analysis import DarkReport, SweepGrid

TRAJECTORY_COLUMNS = "gamma_t,c_phi,c_psi"
SWEEP_COLUMNS = "param_name,param_value,gamma_t,c_phi,c_psi"
ESD_COLUMNS = "kind,t_start,t_end"


def fmt(x) -> str:
    """Canonical text for one value (17 significant digits for floats)."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.17g}"
    return str(x)


def header_lines(config: dict[str, object]) -> list[str]:
    return [f"# {key} = {fmt(value)}" for key, value in sorted(config.items())]


def trajectory_csv(grid, c_phi, c_psi, config: dict[str, object]) -> str:
    lines = header_lines(config)
    lines.append(TRAJECTORY_COLUMNS)
    for t, a, b in zip(grid, c_phi, c_psi):
        lines.append(f"{fmt(t)},{fmt(a)},{fmt(b)}")
    return "\n".join(lines) + "\n"


def sweep_csv(grid: SweepGrid, config: dict[str, object]) -> str:
    lines = header_lines(config)
    lines.append(SWEEP_COLUMNS)
    name = grid.param_name
    for row, value in enumerate(grid.param_values):
        pv = fmt(value)
        c_phi = grid.c_phi[row]
        c_psi = grid.c_psi[row]
        for col, t in enumerate(grid.grid):
            lines.append(f"{name},{pv},{fmt(t)},{fmt(c_phi[col])},{fmt(c_psi[col])}")
    return "\n".join(lines) + "\n"


def esd_csv(report: DarkReport, scan_tmax: float, config: dict[str, object]) -> str:
    lines = header_lines(config)
    lines.append(ESD_COLUMNS)
    rows: list[tuple[float, str, float, float]] = []
    for iv in report.intervals:
        rows.append((iv.t_start, "dark_interval", iv.t_start, iv.t_end))
    for t in report.touch_points:
        rows.append((t, "touch_point", t, t))
    if report.terminal is not None:
        rows.append((report.terminal.t_start, "terminal_esd", report.terminal.t_start, scan_tmax))
    for _, kind, t0, t1 in sorted(rows, key=lambda r: r[0]):
        lines.append(f"{kind},{fmt(t0)},{fmt(t1)}")
    return "\n".join(lines) + "\n"
