"""CSV and JSON serialization of trajectories.

CSV: header ``t,x,z`` then one row per sample, 17 significant digits, LF
line endings.  JSON: ``{"source", "params", "meta", "breaks", "samples"}``
where ``samples`` is a list of ``[t, x, z]``; floats are written with
Python's shortest round-trip repr, so reading the file back reproduces the
samples exactly.
"""

import io
import json
import sys

import numpy as np

from .errors import ConfigurationError
from .trajectory_ode import Trajectory
from .wavefield import WaveParameters


def _require_samples(trajectory):
    if len(trajectory) == 0:
        raise ConfigurationError("cannot export an empty trajectory", module="export")


def csv_text(trajectory):
    _require_samples(trajectory)
    buf = io.StringIO()
    buf.write("t,x,z\n")
    for t, x, z in zip(trajectory.t, trajectory.x, trajectory.z):
        buf.write(f"{t:.17g},{x:.17g},{z:.17g}\n")
    return buf.getvalue()


def json_document(trajectory):
    _require_samples(trajectory)
    return {
        "source": trajectory.source,
        "params": trajectory.params.as_dict(),
        "meta": trajectory.meta,
        "breaks": list(trajectory.breaks),
        "samples": [[float(t), float(x), float(z)]
                    for t, x, z in zip(trajectory.t, trajectory.x, trajectory.z)],
    }


def json_text(trajectory):
    return json.dumps(json_document(trajectory), sort_keys=True, allow_nan=False) + "\n"


def export(trajectory, fmt, path=None):
    """Write ``trajectory`` as csv or json to ``path`` (stdout when None)."""
    if fmt == "csv":
        text = csv_text(trajectory)
    elif fmt == "json":
        text = json_text(trajectory)
    else:
        raise ConfigurationError(f"unsupported export format {fmt!r}", module="export")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    return path


def read_json(path):
    with open(path) as fh:
        doc = json.load(fh)
    p = doc["params"]
    params = WaveParameters(delta=p["delta"], we=p["we"], c=p["c"], c0=p["c0"])
    samples = np.array(doc["samples"], dtype=float).reshape(-1, 3)
    return Trajectory(samples[:, 0], samples[:, 1], samples[:, 2], doc["source"], params,
                      tuple(doc.get("breaks", ())), doc.get("meta", {}))


def read_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1], data[:, 2]
