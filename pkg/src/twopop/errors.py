"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration: bad grid, unknown preset, malformed config file,
    or a hard hypothesis violation (e.g. initial total density >= 1)."""


class StabilityError(RuntimeError):
    """The explicit update produced an inadmissible density.

    Raised instead of silently clipping: a clipped state would corrupt the
    conservation and bound invariants this package exists to measure.
    """

    def __init__(self, species, cell, step, time, value, epsilon):
        self.species = species
        self.cell = cell
        self.step = step
        self.time = time
        self.value = value
        self.epsilon = epsilon
        super().__init__(
            f"stability failure at step {step}, t={time:.6g} (eps={epsilon:g}): "
            f"species {species} density {value:.6g} in cell {cell}"
        )


class InterfaceUndefinedError(ValueError):
    """The species interface cannot be diagnosed (mixed, empty, or one-species state)."""


class DegenerateProfileError(ValueError):
    """The matched pressure profile is degenerate (matching determinant ~ 0)."""
