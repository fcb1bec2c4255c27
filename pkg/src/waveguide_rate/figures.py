"""Rendering of sweep results to figure files.

Plots are display only: the delimited tables remain the canonical output.
Figures are drawn straight onto a standalone canvas so no interactive
backend is ever touched.
"""

from __future__ import annotations

from matplotlib.figure import Figure

__all__ = ["render_sweep_figure"]


def render_sweep_figure(records, path: str) -> None:
    """Two-panel rate plot for a gamma sweep, written to ``path``.

    Top: exact and asymptotic dimensionless rates against gamma (log-log).
    Bottom: their ratio (semilog-x), approaching 1 from below.  The output
    format follows the file extension (png, pdf, svg, ...).
    """
    if not records:
        raise ValueError("no sweep records to plot")
    gammas = [r.gamma for r in records]
    rates = [r.rate for r in records]
    asym = [r.rate_asym for r in records]
    ratios = [r.ratio for r in records]

    fig = Figure(figsize=(6.0, 7.0))
    ax_rate, ax_ratio = fig.subplots(2, 1, sharex=True)

    ax_rate.loglog(gammas, rates, "-", color="tab:blue", label="exact")
    ax_rate.loglog(gammas, asym, "--", color="tab:orange", label="asymptotic")
    ax_rate.set_ylabel(r"$R\sqrt{A}/c$")
    ax_rate.legend(frameon=False)

    ax_ratio.semilogx(gammas, ratios, "-", color="tab:blue")
    ax_ratio.axhline(1.0, color="gray", linewidth=0.8, linestyle=":")
    ax_ratio.set_xlabel(r"$\gamma$")
    ax_ratio.set_ylabel("exact / asymptotic")
    ax_ratio.set_ylim(top=1.02)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
