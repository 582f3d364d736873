"""End-to-end driver: pump -> threshold -> generator -> core -> modes.

One SqueezingRun bundles everything the sweeps and tests need for a single
parameter point, with the pump amplitude set to a fraction of threshold
power (amplitude scales with the square root of the power fraction).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import SqueezingDecomposition, bloch_messiah
from .errors import InvalidArgumentError
from .grids import (
    CavityParams,
    FrequencyGrid,
    PumpField,
    gaussian_pump_input,
    intracavity_pump,
    make_grid,
    pump_grid_for,
)
from .matrices import BlockMatrix, ScatteringMatrix, build_generator, core_scattering
from .observables import GaussianMoments, output_moments
from .threshold import max_gain


def mode_span(delta: float, params: CavityParams) -> float:
    """Signal-band span for mode-resolving runs.

    The characteristic modes live within a few pump linewidths of center,
    so the span follows delta only up to 4 max(gamma, gamma_p); growing it
    further would trade mode resolution for empty band.
    """
    scale = max(params.gamma, params.gamma_p)
    return 16.0 * max(scale, min(delta, 4.0 * scale))


def default_span(delta: float, params: CavityParams) -> float:
    """Span policy resolving both the pump spectrum and the cavity lines."""
    return 16.0 * max(delta, params.gamma_p, params.gamma)


@dataclass(frozen=True, eq=False)
class SqueezingRun:
    params: CavityParams
    delta: float
    power_fraction: float
    grid: FrequencyGrid
    pump_input: PumpField
    pump_cavity: PumpField
    lambda0_probe: float
    threshold_scale: float
    generator: BlockMatrix
    scattering: ScatteringMatrix
    decomposition: SqueezingDecomposition
    moments: GaussianMoments | None


def run_squeezing(params: CavityParams, delta: float, power_fraction: float,
                  grid: FrequencyGrid | None = None, n_points: int = 512,
                  compute_moments: bool = True) -> SqueezingRun:
    """Drive the full chain at P_cav = power_fraction * P_th.

    power_fraction must be < 1: at or above threshold the output is no
    longer squeezed vacuum and the generator is singular.
    """
    if not (0 <= power_fraction < 1):
        raise InvalidArgumentError("power_fraction must lie in [0, 1)")
    if grid is None:
        grid = make_grid(mode_span(delta, params), n_points)
    pgrid = pump_grid_for(grid)
    pump_in = gaussian_pump_input(delta, 1.0, pgrid)
    pump_probe = intracavity_pump(pump_in, params)
    gen_probe = build_generator(pump_probe, params, grid)
    lam0 = max_gain(gen_probe.e_block)
    scale = (params.gamma / 2.0) / lam0 * np.sqrt(power_fraction)
    pump_cavity = PumpField(grid=pgrid, amplitude=scale * pump_probe.amplitude,
                            kind="intracavity")
    gen = build_generator(pump_cavity, params, grid)
    scattering = core_scattering(gen, params)
    dec = bloch_messiah(scattering)
    moments = output_moments(scattering) if compute_moments else None
    return SqueezingRun(
        params=params,
        delta=delta,
        power_fraction=power_fraction,
        grid=grid,
        pump_input=PumpField(grid=pgrid, amplitude=scale * pump_in.amplitude,
                             kind="input"),
        pump_cavity=pump_cavity,
        lambda0_probe=lam0,
        threshold_scale=(params.gamma / 2.0) / lam0,
        generator=gen,
        scattering=scattering,
        decomposition=dec,
        moments=moments,
    )
