"""Command-line front end.

Every subcommand accepts its options as flags or from a JSON object given
with ``--config FILE`` (keys are option names, dashes or underscores);
flags override file values.  Failures print one JSON object on stderr
(``error``, ``module``, ``message`` and details) and exit with status 2 for
configuration problems and 1 for computational errors.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import abel_case, closed_form, export, presets, svg, trajectory_ode
from .errors import CapgravError, ConfigurationError
from .wavefield import WaveParameters, dispersion_speed, linear_fields

MODES = ("dispersion", "field", "trajectory-ode", "trajectory-closed", "trajectory-abel",
         "validate", "plot")
FORMATS = ("csv", "json", "svg")
VALIDATE_TOL = 1e-6


def sign_value(s):
    text = str(s).strip()
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise ConfigurationError(f"sign must be '+' or '-', got {s!r}", module="cli")


def _positive_int(s):
    v = int(s)
    if v < 2:
        raise ConfigurationError(f"sample count must be >= 2, got {v}", module="cli")
    return v


# name: (parser, default, help)
OPTIONS = {
    "delta": (float, None, "depth over wavelength"),
    "we": (float, 0.0, "Weber number"),
    "c": (float, None, "wave speed (default: dispersion relation)"),
    "c0": (float, None, "uniform current speed (default: equal to c)"),
    "x": (float, 0.0, "horizontal position"),
    "z": (float, 0.5, "height above the bed"),
    "t": (float, 0.0, "time"),
    "x0": (float, None, "initial horizontal position"),
    "z0": (float, None, "initial height above the bed"),
    "t0": (float, None, "window start"),
    "t1": (float, None, "window end"),
    "n": (_positive_int, presets.N_SAMPLES, "number of samples"),
    "frame": (str, "lab", "integrated system: lab or moving"),
    "method": (str, None, "integrator (ODE) or quadrature rule (Abel)"),
    "rtol": (float, 1e-10, "relative tolerance"),
    "atol": (float, 1e-12, "absolute tolerance"),
    "z_ceiling": (float, 30.0, "stop when |2 pi delta z| reaches this value"),
    "c1": (float, None, "first integral of the x equation"),
    "c2": (float, None, "first integral of the z equation"),
    "sign_x": (sign_value, 1, "branch sign of the x solution"),
    "sign_z": (sign_value, 1, "branch sign of the z solution"),
    "preset": (str, None, "built-in parameter set"),
    "C": (float, None, "Abel constant, H + b ln(sqrt(2) A)"),
    "tau_hint": (float, None, "parameter inside the wanted tau interval"),
    "tau0": (float, None, "first tau sample (default: domain edge)"),
    "tau1": (float, None, "last tau sample (default: other edge or edge + span)"),
    "span": (float, None, "tau extent sampled on an unbounded domain"),
    "z_const": (float, 0.0, "offset inside the z branch exponential"),
    "sign_y": (sign_value, 1, "sign of sin X along the path"),
    "t_start": (float, 0.0, "time assigned to the first tau sample"),
    "radius": (float, 1e-3, "excluded neighbourhood of the first asymptote"),
    "format": (str, "csv", "output format"),
    "out": (str, None, "output path (directory for plot)"),
}

WAVE = ("delta", "we", "c", "c0")
OUTPUT = ("format", "out")
MODE_OPTIONS = {
    "dispersion": ("delta", "we", "format", "out"),
    "field": WAVE + ("x", "z", "t") + OUTPUT,
    "trajectory-ode": WAVE + ("x0", "z0", "t0", "t1", "n", "frame", "method", "rtol", "atol",
                              "z_ceiling") + OUTPUT,
    "trajectory-closed": WAVE + ("preset", "c1", "c2", "sign_x", "sign_z", "x0", "z0", "t0",
                                 "t1", "n") + OUTPUT,
    "trajectory-abel": WAVE + ("C", "tau_hint", "tau0", "tau1", "span", "z_const", "sign_y",
                               "sign_z", "t_start", "n", "method") + OUTPUT,
    "validate": WAVE + ("x0", "z0", "t1", "n", "radius", "rtol", "atol", "out"),
    "plot": WAVE + ("preset", "c1", "c2", "sign_x", "sign_z", "t0", "t1", "n", "out"),
}
CHOICES = {"format": FORMATS, "frame": ("lab", "moving"), "preset": tuple(presets.PRESETS)}


@dataclass
class RunConfig:
    mode: str
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigurationError(f"unknown mode {self.mode!r}", module="cli")
        allowed = MODE_OPTIONS[self.mode]
        clean = {}
        for key, val in self.options.items():
            key = key.replace("-", "_")
            if key not in allowed:
                raise ConfigurationError(f"option {key!r} is not valid for {self.mode}", module="cli")
            clean[key] = _coerce(key, val)
        for key in allowed:
            clean.setdefault(key, OPTIONS[key][1])
        self.options = clean
        t0, t1 = clean.get("t0"), clean.get("t1")
        if t0 is not None and t1 is not None and not t1 > t0:
            raise ConfigurationError("time window is degenerate: need t1 > t0", module="cli")

    def __getitem__(self, key):
        return self.options[key]


def _coerce(key, val):
    if val is None:
        return None
    parse = OPTIONS[key][0]
    try:
        out = parse(val)
    except CapgravError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad value for {key}: {val!r} ({exc})", module="cli") from None
    if key in CHOICES and out not in CHOICES[key]:
        raise ConfigurationError(f"{key} must be one of {list(CHOICES[key])}, got {out!r}",
                                 module="cli")
    if isinstance(out, float) and not math.isfinite(out):
        raise ConfigurationError(f"{key} must be finite", module="cli")
    return out


def _require(cfg, *keys):
    missing = [k for k in keys if cfg[k] is None]
    if missing:
        raise ConfigurationError(f"{cfg.mode} needs {', '.join('--' + k.replace('_', '-') for k in missing)}",
                                 module="cli")


def wave_parameters(cfg):
    _require(cfg, "delta")
    c = cfg["c"] if cfg["c"] is not None else dispersion_speed(cfg["delta"], cfg["we"])
    c0 = cfg["c0"] if cfg["c0"] is not None else c
    return WaveParameters(delta=cfg["delta"], we=cfg["we"], c=c, c0=c0)


def _write_text(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _emit(traj, cfg, asymptote_x=(), title=None):
    fmt = cfg["format"]
    if fmt == "svg":
        text, _ = svg.svg_text(traj, asymptote_x=asymptote_x, title=title)
        _write_text(text, cfg["out"])
    else:
        export.export(traj, fmt, cfg["out"])


def _closed_setup(cfg):
    """(params, config, default window) for the closed-form modes."""
    if cfg["preset"] is not None:
        preset = presets.get(cfg["preset"])
        params = preset.params()
        overrides = {k: cfg.options.get(k) for k in WAVE if cfg.options.get(k) is not None}
        if overrides:
            merged = {"delta": preset.delta, "we": 0.0, "c": preset.c, "c0": preset.c, **overrides}
            params = WaveParameters(**merged)
            if not params.is_resonant:
                raise ConfigurationError("closed forms need c0 = c", module="cli")
        c1 = preset.c1 if cfg["c1"] is None else cfg["c1"]
        c2 = preset.c2 if cfg["c2"] is None else cfg["c2"]
        ccfg = closed_form.classify_family(c1, c2, params.a2, preset.sign_x, preset.sign_z)
        return params, ccfg, presets.window(ccfg)
    params = wave_parameters(cfg)
    if not params.is_resonant:
        raise ConfigurationError("closed forms need c0 = c", module="cli")
    if cfg.options.get("x0") is not None:
        _require(cfg, "z0")
        p = trajectory_ode.to_moving(params, cfg["x0"], cfg["z0"], 0.0)
        ccfg = closed_form.match_initial(params, p.X, p.Z)
    else:
        _require(cfg, "c1", "c2")
        ccfg = closed_form.classify_family(cfg["c1"], cfg["c2"], params.a2, cfg["sign_x"], cfg["sign_z"])
    return params, ccfg, presets.window(ccfg)


def _closed_trajectory(cfg):
    params, ccfg, (w0, w1) = _closed_setup(cfg)
    t0 = w0 if cfg["t0"] is None else cfg["t0"]
    t1 = w1 if cfg["t1"] is None else cfg["t1"]
    if not t1 > t0:
        raise ConfigurationError("time window is degenerate: need t1 > t0", module="cli")
    traj = closed_form.sample(ccfg, params, t0, t1, cfg["n"])
    traj.meta["window"] = [t0, t1]
    if cfg["preset"] is not None:
        traj.meta["preset"] = cfg["preset"]
    asym_x = [float(v) for v in closed_form.eval_x(ccfg, params, np.array(traj.breaks))] if traj.breaks else []
    return traj, ccfg, params, asym_x


def _run_dispersion(cfg):
    """Print the wave speed given by the dispersion relation."""
    _require(cfg, "delta")
    c = dispersion_speed(cfg["delta"], cfg["we"])
    if cfg["format"] == "json":
        _write_text(json.dumps({"delta": cfg["delta"], "we": cfg["we"], "c": c}) + "\n", cfg["out"])
    else:
        _write_text(f"c = {c:.6g}\n", cfg["out"])


def _run_field(cfg):
    """Evaluate the linearised flow fields at a point."""
    params = wave_parameters(cfg)
    s = linear_fields(params, cfg["x"], cfg["z"], cfg["t"])
    row = {"x": cfg["x"], "z": cfg["z"], "t": cfg["t"], "eta": s.eta, "u": s.u, "v": s.v, "p": s.p}
    if cfg["format"] == "json":
        _write_text(json.dumps({"params": params.as_dict(), "field": row}, sort_keys=True) + "\n",
                    cfg["out"])
    elif cfg["format"] == "csv":
        keys = list(row)
        _write_text(",".join(keys) + "\n" + ",".join(f"{row[k]:.17g}" for k in keys) + "\n", cfg["out"])
    else:
        raise ConfigurationError("field output supports csv or json", module="cli")


def _run_ode(cfg):
    """Integrate particle paths numerically from an initial position."""
    _require(cfg, "x0", "z0")
    params = wave_parameters(cfg)
    t0 = 0.0 if cfg["t0"] is None else cfg["t0"]
    t1 = 1.0 if cfg["t1"] is None else cfg["t1"]
    traj = trajectory_ode.integrate(params, cfg["x0"], cfg["z0"], t0, t1, cfg["n"],
                                    frame=cfg["frame"], rtol=cfg["rtol"], atol=cfg["atol"],
                                    z_ceiling=cfg["z_ceiling"], method=cfg["method"] or "RK45")
    _emit(traj, cfg, title="trajectory (ODE)")


def _run_closed(cfg):
    """Sample the exact trajectory for a current equal to the wave speed."""
    traj, ccfg, _, asym_x = _closed_trajectory(cfg)
    _emit(traj, cfg, asymptote_x=asym_x, title=f"closed form, family {ccfg.family}")


def _run_abel(cfg):
    """Sample the parametric trajectory for a current differing from the wave speed."""
    _require(cfg, "C", "tau_hint")
    params = wave_parameters(cfg)
    acfg = abel_case.AbelConfig.from_hint(params.a2, params.b, cfg["C"], cfg["tau_hint"],
                                          z_const=cfg["z_const"], sign_y=cfg["sign_y"],
                                          sign_z=cfg["sign_z"])
    lo, hi = acfg.tau_domain
    if cfg["tau0"] is not None or cfg["tau1"] is not None:
        a = lo if cfg["tau0"] is None else cfg["tau0"]
        if cfg["tau1"] is not None:
            b = cfg["tau1"]
        elif math.isfinite(hi):
            b = hi
        else:
            b = a + (cfg["span"] or abs(lo))
        taus = np.linspace(a, b, cfg["n"])
    else:
        taus = abel_case.tau_grid(acfg, cfg["n"], cfg["span"])
    traj = abel_case.trajectory_param(acfg, params, taus, cfg["t_start"], cfg["method"] or "adaptive")
    _emit(traj, cfg, title="parametric path")


def _run_validate(cfg):
    """Compare the exact and integrated paths from one initial position."""
    _require(cfg, "x0", "z0")
    params = wave_parameters(cfg)
    if not params.is_resonant:
        raise ConfigurationError("validate compares with the closed form, which needs c0 = c",
                                 module="cli")
    p = trajectory_ode.to_moving(params, cfg["x0"], cfg["z0"], 0.0)
    ccfg = closed_form.match_initial(params, p.X, p.Z)
    spacing = closed_form.asymptote_spacing(ccfg)
    first = closed_form.asymptote_times(ccfg, 0.0, 1.5 * spacing)[0]
    t_end = first - cfg["radius"]
    if cfg["t1"] is not None:
        t_end = min(t_end, cfg["t1"])
    if not t_end > 0.0:
        raise ConfigurationError("validation window is empty", module="cli", first_asymptote=first)
    ts = np.linspace(0.0, t_end, cfg["n"])
    ode = trajectory_ode.integrate(params, cfg["x0"], cfg["z0"], 0.0, t_end, cfg["n"],
                                   rtol=cfg["rtol"], atol=cfg["atol"], times=ts)
    xc, zc = closed_form.eval_xz(ccfg, params, ode.t)
    dx = float(np.max(np.abs(xc - ode.x)))
    dz = float(np.max(np.abs(zc - ode.z)))
    report = {
        "params": params.as_dict(),
        "closed_form": ccfg.as_dict(),
        "window": [0.0, t_end],
        "first_asymptote": first,
        "samples": int(ode.t.size),
        "ode_reached_end": bool(ode.t[-1] == t_end),
        "max_deviation_x": dx,
        "max_deviation_z": dz,
        "max_deviation": max(dx, dz),
        "tolerance": VALIDATE_TOL,
    }
    report["pass"] = bool(report["max_deviation"] <= VALIDATE_TOL and report["ode_reached_end"])
    _write_text(json.dumps(report, sort_keys=True, indent=2) + "\n", cfg["out"])
    return 0 if report["pass"] else 1


def _run_plot(cfg):
    """Write csv, json, svg and a matplotlib pdf into the --out directory."""
    from . import plotting

    _require(cfg, "out")
    traj, ccfg, _, asym_x = _closed_trajectory(cfg)
    os.makedirs(cfg["out"], exist_ok=True)
    stem = os.path.join(cfg["out"], cfg["preset"] or "trajectory")
    title = f"{cfg['preset'] or 'closed form'}: family {ccfg.family}"
    files = {
        "csv": export.export(traj, "csv", stem + ".csv"),
        "json": export.export(traj, "json", stem + ".json"),
        "svg": stem + ".svg",
        "pdf": stem + ".pdf",
    }
    breaks = svg.emit_svg(traj, files["svg"], asymptote_x=asym_x, title=title)
    plotting.trajectory_figure(traj, files["pdf"], asymptote_x=asym_x, title=title)
    summary = {"files": files, "polylines": breaks, "asymptotes": list(traj.breaks),
               "window": traj.meta["window"], "family": ccfg.family}
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")


RUNNERS = {
    "dispersion": _run_dispersion,
    "field": _run_field,
    "trajectory-ode": _run_ode,
    "trajectory-closed": _run_closed,
    "trajectory-abel": _run_abel,
    "validate": _run_validate,
    "plot": _run_plot,
}


def run(config):
    """Execute one RunConfig; returns the process exit status."""
    status = RUNNERS[config.mode](config)
    return 0 if status is None else status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message, module="cli")


def build_parser():
    parser = _Parser(prog="capgrav", allow_abbrev=False,
                     description="Capillary-gravity wave fields and particle trajectories.")
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    for mode in MODES:
        sp = sub.add_parser(mode, allow_abbrev=False, help=RUNNERS[mode].__doc__)
        sp.add_argument("--config", help="JSON file with option values")
        for key in MODE_OPTIONS[mode]:
            # values stay strings here; RunConfig does the typing
            sp.add_argument("--" + key.replace("_", "-"), dest=key, default=None,
                            help=OPTIONS[key][2],
                            choices=CHOICES.get(key))
    return parser


def config_from_args(argv):
    args = build_parser().parse_args(argv)
    opts = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config file: {exc}", module="cli") from None
        if not isinstance(loaded, dict):
            raise ConfigurationError("config file must hold a JSON object", module="cli")
        loaded = dict(loaded)
        if loaded.pop("mode", args.mode) != args.mode:
            raise ConfigurationError("config file mode does not match the subcommand", module="cli")
        opts.update(loaded)
    for key in MODE_OPTIONS[args.mode]:
        val = getattr(args, key)
        if val is not None:
            opts[key] = val
    return RunConfig(args.mode, opts)


def main(argv=None):
    try:
        return run(config_from_args(argv))
    except CapgravError as exc:
        sys.stderr.write(json.dumps(exc.as_dict(), default=str) + "\n")
        return 2 if isinstance(exc, ConfigurationError) else 1
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
