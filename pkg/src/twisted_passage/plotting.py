"""P(tau) line charts rendered to reproducible SVG."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["P_AXIS", "plot_trace"]

P_AXIS = (0.0, 1.05)


def plot_trace(tau, P, path, *, title: str | None = None, crossings=()) -> None:
    """Plot P against tau and save as SVG.

    The P axis is fixed to [0, 1.05]; tau auto-fits.  Predicted crossing
    locations, if given, are marked with dotted verticals.  Identical inputs
    give byte-identical files (fixed hash salt, no date stamp).
    """
    tau = np.asarray(tau, dtype=float)
    P = np.asarray(P, dtype=float)
    if tau.size == 0:
        raise ValueError("empty trajectory: nothing to plot")
    if tau.shape != P.shape:
        raise ValueError(f"tau and P differ in length ({tau.size} vs {P.size})")
    with plt.rc_context({"svg.hashsalt": "twisted-passage", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        try:
            ax.plot(tau, P, lw=1.0, color="k")
            for c in crossings:
                ax.axvline(c, ls=":", lw=0.8, color="0.5")
            ax.set_xlim(tau.min(), tau.max() if tau.max() > tau.min() else tau.min() + 1.0)
            ax.set_ylim(*P_AXIS)
            ax.set_xlabel(r"$\tau$")
            ax.set_ylabel(r"$P(\tau)$")
            if title:
                ax.set_title(title)
            fig.tight_layout()
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
