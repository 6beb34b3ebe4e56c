"""Exception types shared across the package.

Every error carries the name of the module that raised it so the CLI can
report provenance in its machine-readable error output.
"""


class CapgravError(Exception):
    module = "capgrav"

    def __init__(self, message, module=None, **details):
        super().__init__(message)
        if module is not None:
            self.module = module
        self.details = details

    def as_dict(self):
        out = {"error": type(self).__name__, "module": self.module, "message": str(self)}
        for key, val in self.details.items():
            out[key] = val
        return out


class DomainError(CapgravError, ValueError):
    """Argument outside the mathematical domain of a function."""


class PoleError(DomainError):
    """Evaluation at (or numerically at) a pole; ``pole`` is the nearest pole abscissa."""

    def __init__(self, message, pole, **details):
        super().__init__(message, pole=pole, **details)
        self.pole = pole


class AsymptoteError(CapgravError):
    """A closed-form trajectory was evaluated at an instant where z diverges."""

    def __init__(self, message, time, **details):
        super().__init__(message, time=time, **details)
        self.time = time


class DegenerateError(DomainError):
    """Integration constants sit on a family boundary (modulus 0 or 1)."""


class EmptyDomainError(DomainError):
    pass


class ConfigurationError(CapgravError, ValueError):
    pass


class QuadratureError(CapgravError):
    def __init__(self, message, interval, **details):
        super().__init__(message, interval=list(interval), **details)
        self.interval = tuple(interval)


class StepSizeError(CapgravError):
    def __init__(self, message, time, **details):
        super().__init__(message, time=time, **details)
        self.time = time
