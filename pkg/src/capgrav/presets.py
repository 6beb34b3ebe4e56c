"""Built-in parameter sets for the four published closed-form trajectory plots.

The published constants (delta, c = c0, c1, c2, family, signs) are encoded
as given.  The plotted time range is not part of the published data, so
each preset uses a window spanning four z-asymptote periods, starting half
a period before the first asymptote at or after t = 0.
"""

from dataclasses import dataclass

from . import closed_form
from .errors import ConfigurationError
from .wavefield import WaveParameters

N_SAMPLES = 2000
WINDOW_PERIODS = 4


@dataclass(frozen=True)
class Preset:
    name: str
    delta: float
    c: float
    c1: float
    c2: float
    sign_x: int
    sign_z: int
    family: int
    a2_published: float

    def params(self):
        return WaveParameters(delta=self.delta, c=self.c, c0=self.c)

    def config(self):
        p = self.params()
        cfg = closed_form.classify_family(self.c1, self.c2, p.a2, self.sign_x, self.sign_z)
        if cfg.family != self.family:
            raise ConfigurationError(f"preset {self.name} classified as family {cfg.family}",
                                     module="presets")
        return cfg


PRESETS = {
    "fig1": Preset("fig1", 1.0, 10.0, 7.91296, 2.91296, 1, 1, 1, 1.08704),
    "fig2": Preset("fig2", 0.5, 10.0, 177.93, 253.93, 1, 1, 1, 146.07),
    "fig3": Preset("fig3", 0.5, 10.0, 3822.93, 2353.93, -1, 1, 1, 146.07),
    "fig4": Preset("fig4", 0.5, 10.0, 46.07, -253.93, 1, 1, 6, 146.07),
}


def get(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigurationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}",
                                 module="presets") from None


def window(config, periods=WINDOW_PERIODS):
    """Default plotting window (t0, t1) for a closed-form config."""
    spacing = closed_form.asymptote_spacing(config)
    first = closed_form.asymptote_times(config, 0.0, 2.0 * spacing)[0]
    return first - 0.5 * spacing, first + (periods - 0.5) * spacing


def trajectory(name, n=N_SAMPLES, t0=None, t1=None):
    """Sampled closed-form trajectory of a preset; the window used is stored in meta."""
    preset = get(name)
    params, cfg = preset.params(), preset.config()
    w0, w1 = window(cfg)
    t0 = w0 if t0 is None else t0
    t1 = w1 if t1 is None else t1
    traj = closed_form.sample(cfg, params, t0, t1, n)
    traj.meta["preset"] = name
    traj.meta["window"] = [t0, t1]
    return traj, cfg, params
