"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class CoverageError(ValueError):
    """The pump grid does not cover every required sum of signal detunings."""


class AtOrAboveThresholdError(RuntimeError):
    """The generator is singular: the pump is at or above oscillation threshold."""


class DecompositionUnreliableError(RuntimeError):
    """The core scattering matrix failed its symplectic gate.

    Carries the measured residual so callers can report or loosen the gate.
    """

    def __init__(self, residual: float, gate: float):
        self.residual = residual
        self.gate = gate
        super().__init__(
            f"symplectic residual {residual:.3e} exceeds gate {gate:.3e}; "
            "decomposition would be unreliable"
        )


class AmbiguousFwhmError(ValueError):
    """The spectral profile is multi-peaked; no unique FWHM exists.

    ``crossings`` holds every half-maximum crossing found.
    """

    def __init__(self, crossings):
        self.crossings = list(crossings)
        super().__init__(
            f"profile crosses half maximum {len(self.crossings)} times; "
            "FWHM is ambiguous"
        )


class UndefinedModeNumberError(ValueError):
    """Every squeezing amplitude is zero: no pair generation, K is 0/0."""


class GridMismatchError(ValueError):
    """Two spectral objects live on different frequency grids."""
