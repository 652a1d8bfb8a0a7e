"""Render the three standard figures from flra sweep CSVs.

All rendering is read-only over the CSV; the output image depends only
on the CSV content and the spec (Agg backend, fixed size and fonts,
no randomness).
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from plotkit.spec import FigureSpec, PlotkitError, load_frame

_RC = {
    "figure.dpi": 120,
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "plotkit",
}

_STYLE = {
    "aloha": {"color": "#1f77b4", "linestyle": "-", "label": "ALOHA"},
    "saloha": {"color": "#d62728", "linestyle": "--", "label": "S-ALOHA"},
}

_INSET_RANGE = (0.7, 0.95)


def render(spec: FigureSpec) -> str:
    """Render one figure and return the output path."""
    frame = load_frame(spec)
    with plt.rc_context(_RC):
        if spec.figure_id == "fig3":
            fig = _fig3(frame)
        elif spec.figure_id == "fig4":
            fig = _two_panel(frame, x_col="value",
                             x_label="FL devices N")
        else:
            fig = _two_panel(frame, x_col="n_fresh_packets",
                             x_label="fresh packets per round "
                                     r"$\lambda' \cdot T_{tot}$")
        # omit the svg date stamp so output depends only on the input
        metadata = {"Date": None} if spec.out_path.endswith(".svg") else None
        fig.savefig(spec.out_path, metadata=metadata)
        plt.close(fig)
    return spec.out_path


def _by_protocol(frame: pd.DataFrame):
    for proto in ("aloha", "saloha"):
        part = frame[frame["protocol"] == proto].sort_values("value")
        if not part.empty:
            yield proto, part


def _shade_infeasible(ax, x, infeasible):
    """Shade contiguous x spans whose points are infeasible."""
    x = np.asarray(x, dtype=float)
    bad = np.asarray(infeasible, dtype=bool)
    if not bad.any():
        return
    # span boundaries sit halfway between adjacent sample points
    edges = np.concatenate(([x[0]], 0.5 * (x[1:] + x[:-1]), [x[-1]]))
    run_start = None
    for i, flag in enumerate(bad):
        if flag and run_start is None:
            run_start = edges[i]
        if not flag and run_start is not None:
            ax.axvspan(run_start, edges[i], color="0.8", alpha=0.6, zorder=0)
            run_start = None
    if run_start is not None:
        ax.axvspan(run_start, edges[-1], color="0.8", alpha=0.6, zorder=0)


def _all_infeasible(frame: pd.DataFrame, x_col: str):
    """Per-x flag that is True where no protocol is feasible."""
    pivot = frame.pivot_table(index=x_col, columns="protocol",
                              values="feasible", aggfunc="any")
    bad = ~pivot.any(axis=1)
    return bad.index.to_numpy(dtype=float), bad.to_numpy(dtype=bool)


def _fig3(frame: pd.DataFrame):
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(5.2, 6.0), sharex=True,
        constrained_layout=True,
    )
    xs, bad = _all_infeasible(frame, "value")

    # the ceiling is defined wherever the FL latency budget holds, even
    # where it falls below the throughput requirement
    for proto, part in _by_protocol(frame):
        known = part[part["q_max"].notna()]
        top.plot(known["value"], known["q_max"], **_STYLE[proto])
    top.axhline(1 / math.e, color="0.4", linewidth=0.8)
    top.axhline(1 / (2 * math.e), color="0.4", linewidth=0.8)
    top.annotate("1/e", xy=(0.985, 1 / math.e), ha="right", va="bottom",
                 fontsize=8, color="0.3")
    top.annotate("1/2e", xy=(0.985, 1 / (2 * math.e)), ha="right",
                 va="bottom", fontsize=8, color="0.3")
    _shade_infeasible(top, xs, bad)
    top.set_ylabel(r"maximum throughput $q_{max}$")
    top.legend(loc="center right")

    for proto, part in _by_protocol(frame):
        feas = part[part["feasible"]]
        bottom.plot(feas["value"], feas["e_tot_J"], **_STYLE[proto])
    known_fl = frame[frame["e_fl_J"].notna()]
    fl_curve = known_fl.groupby("value", as_index=False)["e_fl_J"].first()
    bottom.plot(fl_curve["value"], fl_curve["e_fl_J"], color="0.25",
                linestyle=":", label=r"$E^{FL}$ only")
    _shade_infeasible(bottom, xs, bad)
    bottom.set_xlabel(r"bandwidth share $\rho$")
    bottom.set_ylabel(r"energy [J]")
    bottom.legend(loc="upper left")

    inset = bottom.inset_axes([0.45, 0.45, 0.5, 0.5])
    lo, hi = _INSET_RANGE
    for proto, part in _by_protocol(frame):
        feas = part[part["feasible"]]
        zoom = feas[(feas["value"] >= lo) & (feas["value"] <= hi)]
        inset.plot(zoom["value"], zoom["e_tot_J"], **_STYLE[proto])
    inset.set_xlim(lo, hi)
    inset.tick_params(labelsize=7)
    inset.set_title(rf"$\rho \in [{lo}, {hi}]$", fontsize=7)
    bottom.indicate_inset_zoom(inset, edgecolor="0.5")
    return fig


def _two_panel(frame: pd.DataFrame, x_col: str, x_label: str):
    fig, (left, right) = plt.subplots(
        1, 2, figsize=(7.4, 3.4), constrained_layout=True
    )
    xs, bad = _all_infeasible(frame, x_col)

    for proto, part in _by_protocol(frame):
        feas = part[part["feasible"]]
        left.plot(feas[x_col], feas["e_tot_J"], marker="o",
                  markersize=3, **_STYLE[proto])
        right.plot(feas[x_col], feas["rho_star"], marker="o",
                   markersize=3, **_STYLE[proto])
        infeas = part[~part["feasible"]]
        if not infeas.empty:
            for ax in (left, right):
                ax.plot(infeas[x_col], np.zeros(len(infeas)), linestyle="",
                        marker="x", color=_STYLE[proto]["color"],
                        label=f"{_STYLE[proto]['label']} infeasible")
    for ax in (left, right):
        _shade_infeasible(ax, xs, bad)
        ax.set_xlabel(x_label)
    left.set_ylabel(r"total energy $E_{tot}$ [J]")
    right.set_ylabel(r"optimal share $\rho^*$")
    right.set_ylim(0.0, 1.0)
    left.legend(loc="best", fontsize=8)
    return fig
