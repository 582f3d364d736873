"""Local-oscillator shaping with a single-pole filter cavity.

The unfiltered LO is the Gaussian tap of the pulse that also drives the
doubler; passing it through a Lorentzian filter cavity (drop port, linewidth
gamma_f) and delaying it reshapes it toward the first characteristic mode.
Overlap maximization over the delay rides on a zero-padded FFT of the
cross-spectrum followed by a golden-section refinement, so the whole
optimization is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import ModeShape
from .errors import GridMismatchError, InvalidArgumentError
from .grids import LN2, FrequencyGrid
from .observables import GaussianMoments, homodyne_variance, squeezing_db

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
FILTER_BRACKET = (1e-2, 1e3)


@dataclass(frozen=True)
class LoConfig:
    """Unfiltered LO bandwidth, filter linewidth, and time delay."""

    delta_lo: float
    gamma_f: float = float("inf")
    delay: float = 0.0

    def __post_init__(self):
        if not (self.delta_lo > 0):
            raise InvalidArgumentError("delta_lo must be positive")
        if not (self.gamma_f > 0):
            raise InvalidArgumentError("gamma_f must be positive")


@dataclass(frozen=True)
class OverlapResult:
    """Overlap value and the delay to apply to the first mode to realize it.

    The delay is in LoConfig convention (multiplies the first argument by
    e^{i nu delay}), so it can be fed straight back into filtered_lo.
    """

    value: float
    delay: float


@dataclass(frozen=True)
class FilterOptimum:
    gamma_f: float
    overlap: float
    delay: float
    at_boundary: bool


def filtered_lo(cfg: LoConfig, grid: FrequencyGrid) -> ModeShape:
    """Gaussian LO spectrum after the drop-port Lorentzian filter.

    L(nu) ~ exp(-(4 ln 2) nu^2 / delta_lo^2) * (gamma_f/2)/(-i nu +
    gamma_f/2) * e^{i nu delay}, unit-normalized.
    """
    nu = grid.points
    amp = np.exp(-(4.0 * LN2) * nu**2 / cfg.delta_lo**2).astype(complex)
    if np.isfinite(cfg.gamma_f):
        amp *= (cfg.gamma_f / 2.0) / (-1j * nu + cfg.gamma_f / 2.0)
    if cfg.delay != 0.0:
        amp *= np.exp(1j * nu * cfg.delay)
    amp /= np.sqrt(grid.step * np.sum(np.abs(amp) ** 2))
    return ModeShape(grid=grid, amplitude=amp)


def _delay_objective(cross: np.ndarray, nu: np.ndarray, tau: float) -> float:
    return float(np.abs(cross @ np.exp(1j * nu * tau)) ** 2)


def overlap(a: ModeShape, b: ModeShape, optimize_delay: bool = False) -> OverlapResult:
    """Mode overlap |step * sum a* b e^{i nu tau}|^2, optionally delay-maximized.

    The coarse delay scan is the FFT of the cross-spectrum zero-padded
    8x; a golden-section pass refines the winning bin.
    """
    if not a.grid.same_as(b.grid):
        raise GridMismatchError("mode shapes live on different grids")
    step = a.grid.step
    nu = a.grid.points
    cross = step * np.conj(a.amplitude) * b.amplitude
    if not optimize_delay:
        return OverlapResult(value=float(np.abs(np.sum(cross)) ** 2), delay=0.0)

    n = a.grid.n_points
    pad = 8 * n
    # fft bin m samples tau = -2 pi m / (pad * step) up to a constant phase
    spec = np.fft.fft(cross, n=pad)
    m = int(np.argmax(np.abs(spec)))
    dtau = 2.0 * np.pi / (pad * step)
    tau0 = -m * dtau
    # map to the principal window centered on zero
    T = 2.0 * np.pi / step
    if tau0 <= -T / 2:
        tau0 += T
    lo_t, hi_t = tau0 - dtau, tau0 + dtau
    for _ in range(80):
        m1 = hi_t - GOLDEN * (hi_t - lo_t)
        m2 = lo_t + GOLDEN * (hi_t - lo_t)
        if _delay_objective(cross, nu, m1) < _delay_objective(cross, nu, m2):
            lo_t = m1
        else:
            hi_t = m2
        if hi_t - lo_t < 1e-12 * max(1.0, abs(tau0)):
            break
    tau = 0.5 * (lo_t + hi_t)
    val = _delay_objective(cross, nu, tau)
    # the objective phase e^{i nu tau} equals shifting the first mode by
    # -tau in LoConfig convention
    return OverlapResult(value=val, delay=-tau)


def optimize_filter(cfg: LoConfig, target: ModeShape,
                    bracket: tuple[float, float] = FILTER_BRACKET,
                    rel_tol: float = 1e-4,
                    optimize_delay: bool = True) -> FilterOptimum:
    """Golden-section maximization of overlap over log-spaced gamma_f.

    A 25-point log pre-scan brackets the maximum; a monotone objective
    (argmax on the scan boundary) short-circuits to the boundary with
    ``at_boundary`` set.
    """
    grid = target.grid

    def objective(gf: float) -> OverlapResult:
        lo = filtered_lo(LoConfig(delta_lo=cfg.delta_lo, gamma_f=gf), grid)
        return overlap(lo, target, optimize_delay=optimize_delay)

    lgs = np.linspace(np.log(bracket[0]), np.log(bracket[1]), 25)
    coarse = [objective(float(np.exp(lg))).value for lg in lgs]
    i = int(np.argmax(coarse))
    if i == 0 or i == len(lgs) - 1:
        gf = float(np.exp(lgs[i]))
        res = objective(gf)
        return FilterOptimum(gamma_f=gf, overlap=res.value, delay=res.delay,
                             at_boundary=True)
    lo_g, hi_g = lgs[i - 1], lgs[i + 1]
    while hi_g - lo_g > rel_tol:
        m1 = hi_g - GOLDEN * (hi_g - lo_g)
        m2 = lo_g + GOLDEN * (hi_g - lo_g)
        if objective(float(np.exp(m1))).value < objective(float(np.exp(m2))).value:
            lo_g = m1
        else:
            hi_g = m2
    gf = float(np.exp(0.5 * (lo_g + hi_g)))
    res = objective(gf)
    return FilterOptimum(gamma_f=gf, overlap=res.value, delay=res.delay,
                         at_boundary=False)


def measured_squeezing(moments: GaussianMoments, lo: ModeShape) -> float:
    """Squeezing level in dB measured with the given LO, minimized over phase."""
    result = homodyne_variance(moments, lo)
    return squeezing_db(result.min_variance)
