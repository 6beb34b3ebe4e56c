"""Matplotlib report figures for trajectories.

Figures are built on ``matplotlib.figure.Figure`` directly (no pyplot
state), and saved with fixed metadata so repeated runs give identical
files.
"""

import numpy as np
import matplotlib
from matplotlib.figure import Figure

from .svg import segments

STYLE = {
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "capgrav",
    "svg.fonttype": "none",
    "path.simplify": False,
}


def _metadata(path):
    ext = str(path).rsplit(".", 1)[-1].lower()
    if ext == "pdf":
        return {"CreationDate": None, "Creator": "capgrav"}
    if ext == "svg":
        return {"Date": None, "Creator": "capgrav"}
    if ext == "png":
        return {"Software": "capgrav"}
    return None


def trajectory_figure(trajectories, path, asymptote_x=(), title=None, labels=None):
    """Plot one or more trajectories in the (x, z) plane and save to ``path``."""
    if not isinstance(trajectories, (list, tuple)):
        trajectories = [trajectories]
    with matplotlib.rc_context(STYLE):
        fig = Figure(figsize=(6.4, 4.0))
        ax = fig.add_subplot()
        for k, traj in enumerate(trajectories):
            color = f"C{k}"
            label = labels[k] if labels else traj.source
            for j, idx in enumerate(segments(traj)):
                ax.plot(traj.x[idx], traj.z[idx], color=color, lw=1.2,
                        label=label if j == 0 else None)
        for xa in asymptote_x:
            ax.axvline(xa, color="0.6", ls="--", lw=0.8)
        ax.set_xlabel("x")
        ax.set_ylabel("z")
        if title:
            ax.set_title(title)
        if len(trajectories) > 1:
            ax.legend()
        fig.tight_layout()
        fig.savefig(path, metadata=_metadata(path))
    return path


def deviation_figure(t, deviation, path, title=None):
    """Semilog plot of a pointwise deviation, e.g. closed form against ODE."""
    with matplotlib.rc_context(STYLE):
        fig = Figure(figsize=(6.4, 3.2))
        ax = fig.add_subplot()
        ax.semilogy(t, np.maximum(np.abs(deviation), 1e-300), lw=1.0)
        ax.set_xlabel("t")
        ax.set_ylabel("|deviation|")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, metadata=_metadata(path))
    return path
