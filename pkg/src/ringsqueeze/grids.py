"""Frequency grids, cavity parameters, and pump fields.

Everything is expressed in units of the total signal decay rate gamma
(gamma = 1 by convention). Signal detunings nu are measured from the signal
carrier, pump detunings mu from the pump carrier at twice the signal
frequency. Spectral amplitudes are plain complex arrays sampled on a grid;
time-domain profiles use the quadrature-weighted inverse transform
eps(t) = (step / 2 pi) * sum_j eps(mu_j) exp(-i mu_j t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CoverageError, InvalidArgumentError

LN2 = float(np.log(2.0))


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Uniform midpoint grid of detunings, symmetric about zero.

    Parameters
    ----------
    n_points : int
        Number of samples (>= 1; the public constructor `make_grid`
        requires >= 2, single-point grids exist for closed-form oracles).
    span : float
        Total width of the window, in units of gamma.
    """

    n_points: int
    span: float
    step: float = field(init=False)
    points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_points < 1:
            raise InvalidArgumentError(f"n_points must be >= 1, got {self.n_points}")
        if not (self.span > 0):
            raise InvalidArgumentError(f"span must be positive, got {self.span}")
        step = self.span / self.n_points
        pts = (np.arange(self.n_points) - (self.n_points - 1) / 2.0) * step
        pts.flags.writeable = False
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.n_points

    def same_as(self, other: "FrequencyGrid", tol: float = 1e-12) -> bool:
        return (
            self.n_points == other.n_points
            and abs(self.span - other.span) <= tol * max(self.span, other.span)
        )


@dataclass(frozen=True)
class CavityParams:
    """Decay and coupling rates of the signal and pump resonances.

    gamma is derived as gamma_i + gamma_c exactly. All rates are in units
    of the total signal decay, so gamma == 1 by convention.
    """

    gamma_i: float
    gamma_c: float
    gamma_p: float
    gamma_pc: float
    kappa: float = 1.0

    def __post_init__(self):
        if self.gamma_i < 0:
            raise InvalidArgumentError("gamma_i must be >= 0")
        if not (self.gamma_c > 0):
            raise InvalidArgumentError("gamma_c must be > 0")
        if not (self.gamma_p > 0):
            raise InvalidArgumentError("gamma_p must be > 0")
        if not (0 < self.gamma_pc <= self.gamma_p):
            raise InvalidArgumentError("gamma_pc must lie in (0, gamma_p]")
        if self.kappa < 0:
            raise InvalidArgumentError("kappa must be >= 0")

    @property
    def gamma(self) -> float:
        return self.gamma_i + self.gamma_c


@dataclass(frozen=True, eq=False)
class PumpField:
    """Complex spectral amplitude over a pump-detuning grid.

    kind is "input" for the bus-waveguide field and "intracavity" after the
    pump resonance response has been applied.
    """

    grid: FrequencyGrid
    amplitude: np.ndarray
    kind: str

    def __post_init__(self):
        amp = np.asarray(self.amplitude, dtype=complex)
        if amp.shape != (self.grid.n_points,):
            raise InvalidArgumentError(
                f"amplitude has shape {amp.shape}, expected ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(amp)):
            raise InvalidArgumentError("amplitude must be finite")
        if self.kind not in ("input", "intracavity"):
            raise InvalidArgumentError(f"unknown pump kind {self.kind!r}")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitude", amp)


@dataclass(frozen=True)
class TemporalProfile:
    """Time samples of a spectral field and its peak intensity."""

    times: np.ndarray
    samples: np.ndarray
    peak_intensity: float


def make_grid(span: float, n_points: int) -> FrequencyGrid:
    """Build a signal-band detuning grid.

    The points are midpoints nu_j = (j - (n-1)/2) * step with step =
    span / n_points, strictly increasing and symmetric about zero.
    """
    if not (span > 0):
        raise InvalidArgumentError(f"span must be positive, got {span}")
    if n_points < 2:
        raise InvalidArgumentError(f"n_points must be >= 2, got {n_points}")
    return FrequencyGrid(n_points=n_points, span=span)


def pump_grid_for(signal: FrequencyGrid) -> FrequencyGrid:
    """Derive the pump grid covering every sum nu_j + nu_k of a signal grid.

    Uses 2n+1 points at the signal step. The odd count puts the midpoint
    lattice on integer multiples of the step, so it contains mu = 0 and
    every pairwise sum of signal detunings exactly.
    """
    m = 2 * signal.n_points + 1
    return FrequencyGrid(n_points=m, span=m * signal.step)


def gaussian_pump_input(delta: float, peak: complex, grid: FrequencyGrid) -> PumpField:
    """Gaussian input pump spectrum with amplitude FWHM ``delta``.

    amplitude(mu) = peak * exp(-(4 ln 2) mu^2 / delta^2), mu measured from
    the pump carrier.
    """
    if not (delta > 0):
        raise InvalidArgumentError(f"delta must be positive, got {delta}")
    mu = grid.points
    amp = peak * np.exp(-(4.0 * LN2) * mu**2 / delta**2)
    return PumpField(grid=grid, amplitude=amp.astype(complex), kind="input")


def cw_pump_input(amplitude: complex, grid: FrequencyGrid) -> PumpField:
    """Single-line (CW) pump: all amplitude in the bin closest to mu = 0."""
    amp = np.zeros(grid.n_points, dtype=complex)
    amp[int(np.argmin(np.abs(grid.points)))] = amplitude
    return PumpField(grid=grid, amplitude=amp, kind="input")


def intracavity_pump(field: PumpField, params: CavityParams) -> PumpField:
    """Apply the pump resonance response to an input spectrum.

    amplitude(mu) -> amplitude(mu) * sqrt(gamma_pc) / (-i mu + gamma_p / 2).
    """
    if field.kind != "input":
        raise InvalidArgumentError("intracavity_pump expects an input-kind field")
    mu = field.grid.points
    resp = np.sqrt(params.gamma_pc) / (-1j * mu + params.gamma_p / 2.0)
    return PumpField(grid=field.grid, amplitude=field.amplitude * resp,
                     kind="intracavity")


def temporal_profile(field: PumpField) -> TemporalProfile:
    """Inverse transform of a spectral field onto its conjugate time window.

    The window is T = 2 pi / step with n_points samples; amplitudes carry
    the quadrature weight step / (2 pi), so a single spectral line of unit
    amplitude maps to a constant of modulus step / (2 pi).
    """
    grid = field.grid
    n = grid.n_points
    T = 2.0 * np.pi / grid.step
    t = (np.arange(n) - n // 2) * (T / n)
    phases = np.exp(-1j * np.outer(t, grid.points))
    samples = (grid.step / (2.0 * np.pi)) * phases @ field.amplitude
    peak = float(np.max(np.abs(samples) ** 2))
    return TemporalProfile(times=t, samples=samples, peak_intensity=peak)


def sample_at_sums(pump: PumpField, signal: FrequencyGrid) -> np.ndarray:
    """Pump amplitude at every sum nu_j + nu_k as an n x n symmetric array.

    Exact lookup when the sums land on pump grid points (the derived grid
    guarantees this); linear complex interpolation otherwise.
    """
    sums = signal.points[:, None] + signal.points[None, :]
    mu = pump.grid.points
    lo, hi = float(np.min(sums)), float(np.max(sums))
    if lo < mu[0] - 1e-9 * pump.grid.step or hi > mu[-1] + 1e-9 * pump.grid.step:
        raise CoverageError(
            f"pump grid [{mu[0]:.6g}, {mu[-1]:.6g}] does not cover sums "
            f"[{lo:.6g}, {hi:.6g}]"
        )
    idx = (sums - mu[0]) / pump.grid.step
    nearest = np.rint(idx)
    if np.max(np.abs(idx - nearest)) < 1e-9:
        return pump.amplitude[nearest.astype(int)]
    flat = sums.ravel()
    re = np.interp(flat, mu, pump.amplitude.real)
    im = np.interp(flat, mu, pump.amplitude.imag)
    return (re + 1j * im).reshape(sums.shape)
