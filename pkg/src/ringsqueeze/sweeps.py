"""Parameter sweeps over bandwidth, power, and linewidth, as tables.

Every sweep resolves a RunConfig into an ordered list of rows; points are
independent and can be dispatched to a process pool. Results are always
ordered by sweep index so tables are byte-identical across reruns at any
worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from .decomposition import characteristic_modes
from .errors import AmbiguousFwhmError, InvalidArgumentError
from .grids import CavityParams, make_grid
from .loshape import FilterOptimum, LoConfig, filtered_lo, optimize_filter, overlap
from .observables import (
    effective_mode_number,
    homodyne_variance,
    mode_fwhm,
    squeezed_variance,
    squeezing_db,
)
from .pipeline import run_squeezing
from .threshold import threshold_power_ratio

DEFAULT_GAMMA_I = 0.125
DEFAULT_GAMMA_C = 0.875
DEFAULT_GAMMA_P = 2.0
DEFAULT_DELTA = 4.0          # 2 * gamma_p at the default pump linewidth
DEFAULT_POWER_FRACTION = 0.99
DEFAULT_GRID_POINTS = 512


@dataclass(frozen=True)
class RunConfig:
    """Flat, file-loadable configuration for every command."""

    gamma_i: float = DEFAULT_GAMMA_I
    gamma_c: float = DEFAULT_GAMMA_C
    gamma_p: float = DEFAULT_GAMMA_P
    gamma_pc: float = DEFAULT_GAMMA_P
    kappa: float = 1.0
    delta: float = DEFAULT_DELTA
    power_fraction: float = DEFAULT_POWER_FRACTION
    grid_points: int = DEFAULT_GRID_POINTS
    grid_span: float | None = None
    power_def: str = "energy"
    lo_delta_convention: str = "pump/sqrt2"
    lo_filter: bool = True
    sweep_min: float | None = None
    sweep_max: float | None = None
    sweep_count: int | None = None
    sweep_scale: str = "log"
    threads: int = 1

    def __post_init__(self):
        self.cavity()  # validates rates
        if not (0 <= self.power_fraction < 1):
            raise InvalidArgumentError(
                "power_fraction must lie in [0, 1): above threshold the "
                "output is no longer squeezed vacuum"
            )
        if self.grid_points < 2:
            raise InvalidArgumentError("grid_points must be >= 2")
        if self.grid_span is not None and not (self.grid_span > 0):
            raise InvalidArgumentError("grid_span must be positive")
        if self.power_def not in ("peak", "energy"):
            raise InvalidArgumentError("power_def must be 'peak' or 'energy'")
        if self.lo_delta_convention not in ("pump/sqrt2", "pump"):
            raise InvalidArgumentError(
                "lo_delta_convention must be 'pump/sqrt2' or 'pump'"
            )
        if self.sweep_scale not in ("log", "linear"):
            raise InvalidArgumentError("sweep_scale must be 'log' or 'linear'")
        if self.threads < 1:
            raise InvalidArgumentError("threads must be >= 1")
        if not (self.delta > 0):
            raise InvalidArgumentError("delta must be positive")

    def cavity(self) -> CavityParams:
        return CavityParams(
            gamma_i=self.gamma_i, gamma_c=self.gamma_c,
            gamma_p=self.gamma_p, gamma_pc=self.gamma_pc, kappa=self.kappa,
        )

    def lo_delta(self, delta: float) -> float:
        if self.lo_delta_convention == "pump/sqrt2":
            return delta / np.sqrt(2.0)
        return delta

    def resolved(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_file(path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = set(RunConfig.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise InvalidArgumentError(
                f"unknown config keys: {sorted(unknown)}; known keys: {sorted(known)}"
            )
        return RunConfig(**data)

    def with_overrides(self, **kwargs) -> "RunConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs)


@dataclass(frozen=True)
class Table:
    """Column-ordered sweep result with its resolved configuration."""

    command: str
    columns: tuple
    rows: list
    meta: dict


def _sweep_axis(cfg: RunConfig, lo: float, hi: float, count: int) -> np.ndarray:
    lo = cfg.sweep_min if cfg.sweep_min is not None else lo
    hi = cfg.sweep_max if cfg.sweep_max is not None else hi
    count = cfg.sweep_count if cfg.sweep_count is not None else count
    if cfg.sweep_scale == "linear":
        return np.linspace(lo, hi, count)
    return np.logspace(np.log10(lo), np.log10(hi), count)


def _map_points(fn, points, threads: int):
    if threads <= 1:
        return [fn(p) for p in points]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, points))


def _first_mode_fwhm(run) -> float:
    _, f1 = characteristic_modes(run.decomposition, 0, run.grid)
    try:
        return mode_fwhm(f1)
    except AmbiguousFwhmError:
        return float("nan")


# -- threshold -----------------------------------------------------------

def _threshold_point(args):
    cfg_dict, delta = args
    cfg = RunConfig(**cfg_dict)
    params = cfg.cavity()
    span = cfg.grid_span or 16.0 * max(params.gamma_p, params.gamma)
    grid = make_grid(span, cfg.grid_points)
    p_peak = threshold_power_ratio(delta, params, grid, "peak")
    p_energy = threshold_power_ratio(delta, params, grid, "energy")
    return [delta, p_peak, p_energy]


def sweep_threshold(cfg: RunConfig) -> Table:
    """Normalized threshold power against pump bandwidth (both definitions)."""
    deltas = _sweep_axis(cfg, 0.2, 100.0, 21)
    rows = _map_points(_threshold_point,
                       [(cfg.resolved(), float(d)) for d in deltas],
                       cfg.threads)
    return Table(
        command="threshold",
        columns=("delta", "p_ratio_peak", "p_ratio_energy"),
        rows=rows,
        meta={"default_power_def": cfg.power_def},
    )


# -- characteristic modes -------------------------------------------------

def sweep_modes(cfg: RunConfig, n_modes: int = 3) -> Table:
    """Spectral amplitude and phase of the leading characteristic modes."""
    params = cfg.cavity()
    grid = None
    if cfg.grid_span is not None:
        grid = make_grid(cfg.grid_span, cfg.grid_points)
    run = run_squeezing(params, cfg.delta, cfg.power_fraction, grid=grid,
                        n_points=cfg.grid_points, compute_moments=False)
    shapes = [characteristic_modes(run.decomposition, k, run.grid)[1]
              for k in range(n_modes)]
    cols = ["nu"]
    for k in range(n_modes):
        cols += [f"abs_f{k + 1}", f"arg_f{k + 1}"]
    rows = []
    for j, nu in enumerate(run.grid.points):
        row = [float(nu)]
        for shape in shapes:
            row += [float(np.abs(shape.amplitude[j])),
                    float(np.angle(shape.amplitude[j]))]
        rows.append(row)
    return Table(
        command="modes",
        columns=tuple(cols),
        rows=rows,
        meta={"xi": [float(x) for x in run.decomposition.xi[:n_modes]],
              "span": run.grid.span},
    )


# -- squeezing levels -----------------------------------------------------

def _squeeze_power_point(args):
    cfg_dict, fraction = args
    cfg = RunConfig(**cfg_dict)
    run = run_squeezing(cfg.cavity(), cfg.delta, fraction,
                        n_points=cfg.grid_points, compute_moments=False)
    xi1 = float(run.decomposition.xi[0])
    var = squeezed_variance(xi1, cfg.cavity())
    return [fraction, xi1, squeezing_db(var)]


def sweep_squeeze(cfg: RunConfig, axis: str = "power",
                  n_modes: int = 8) -> Table:
    """First-mode squeezing vs pump power, or per-mode levels at one power."""
    if axis == "power":
        fractions = np.clip(_sweep_axis(cfg, 0.05, 0.99, 11), 0.0, 0.995)
        rows = _map_points(_squeeze_power_point,
                           [(cfg.resolved(), float(f)) for f in fractions],
                           cfg.threads)
        return Table(
            command="squeeze",
            columns=("power_fraction", "xi1", "db1"),
            rows=rows,
            meta={"axis": "power", "delta": cfg.delta},
        )
    if axis != "mode":
        raise InvalidArgumentError("squeeze axis must be 'power' or 'mode'")
    params = cfg.cavity()
    run = run_squeezing(params, cfg.delta, cfg.power_fraction,
                        n_points=cfg.grid_points, compute_moments=False)
    rows = []
    for k in range(min(n_modes, run.decomposition.n)):
        xi_k = float(run.decomposition.xi[k])
        rows.append([k + 1, xi_k,
                     squeezing_db(squeezed_variance(xi_k, params))])
    return Table(
        command="squeeze",
        columns=("mode_index", "xi", "db"),
        rows=rows,
        meta={"axis": "mode", "power_fraction": cfg.power_fraction},
    )


# -- effective mode number ------------------------------------------------

def _mode_number_point(args):
    cfg_dict, axis, value = args
    cfg = RunConfig(**cfg_dict)
    params = cfg.cavity()
    delta, fraction = cfg.delta, cfg.power_fraction
    if axis == "power":
        fraction = value
    elif axis == "delta":
        delta = value
    elif axis == "gamma_p":
        params = CavityParams(
            gamma_i=params.gamma_i, gamma_c=params.gamma_c,
            gamma_p=value, gamma_pc=value, kappa=params.kappa,
        )
    run = run_squeezing(params, delta, fraction, n_points=cfg.grid_points,
                        compute_moments=False)
    k_eff = effective_mode_number(run.decomposition.xi)
    return [value, k_eff, float(run.decomposition.xi[0]), _first_mode_fwhm(run)]


def sweep_mode_number(cfg: RunConfig, axis: str = "power") -> Table:
    """Effective mode number against power, pump bandwidth, or pump linewidth.

    The delta sweep also carries the first-mode FWHM column used for the
    bandwidth-saturation figure.
    """
    defaults = {
        "power": (0.05, 0.99, 9),
        "delta": (1.0, 64.0, 9),
        "gamma_p": (0.5, 8.0, 7),
    }
    if axis not in defaults:
        raise InvalidArgumentError(
            "mode-number axis must be 'power', 'delta', or 'gamma_p'"
        )
    lo, hi, count = defaults[axis]
    values = _sweep_axis(cfg, lo, hi, count)
    if axis == "power":
        values = np.clip(values, 0.0, 0.995)
    rows = _map_points(_mode_number_point,
                       [(cfg.resolved(), axis, float(v)) for v in values],
                       cfg.threads)
    return Table(
        command="mode-number",
        columns=(axis, "K", "xi1", "fwhm1"),
        rows=rows,
        meta={"axis": axis, "delta": cfg.delta,
              "power_fraction": cfg.power_fraction},
    )


# -- local oscillator -----------------------------------------------------

def _lo_point(args):
    cfg_dict, delta = args
    cfg = RunConfig(**cfg_dict)
    params = cfg.cavity()
    run = run_squeezing(params, delta, cfg.power_fraction,
                        n_points=cfg.grid_points)
    _, f1 = characteristic_modes(run.decomposition, 0, run.grid)
    matched = homodyne_variance(run.moments, f1)
    matched_db = squeezing_db(matched.min_variance)
    delta_lo = cfg.lo_delta(delta)
    plain_overlap = overlap(filtered_lo(LoConfig(delta_lo=delta_lo), run.grid),
                            f1, optimize_delay=True)
    if cfg.lo_filter:
        opt = optimize_filter(LoConfig(delta_lo=delta_lo), f1)
    else:
        opt = FilterOptimum(gamma_f=float("inf"), overlap=plain_overlap.value,
                            delay=plain_overlap.delay, at_boundary=False)
    lo_mode = filtered_lo(
        LoConfig(delta_lo=delta_lo, gamma_f=opt.gamma_f, delay=opt.delay),
        run.grid,
    )
    measured = homodyne_variance(run.moments, lo_mode)
    measured_db = squeezing_db(measured.min_variance)
    return [delta, opt.overlap, plain_overlap.value, measured_db, matched_db,
            opt.gamma_f if np.isfinite(opt.gamma_f) else 0.0]


def sweep_lo(cfg: RunConfig) -> Table:
    """Overlap and measured squeezing for the shaped local oscillator."""
    deltas = _sweep_axis(cfg, 0.5, 32.0, 9)
    rows = _map_points(_lo_point, [(cfg.resolved(), float(d)) for d in deltas],
                       cfg.threads)
    return Table(
        command="lo",
        columns=("delta", "overlap", "overlap_unfiltered", "measured_db",
                 "matched_db", "gamma_f_opt"),
        rows=rows,
        meta={"lo_filter": cfg.lo_filter,
              "lo_delta_convention": cfg.lo_delta_convention},
    )


# -- convergence ----------------------------------------------------------

def convergence_summary(cfg: RunConfig) -> Table:
    """Headline observables at the configured grid and at doubled points.

    Reports K, the default-definition threshold ratio, and the first-mode
    squeezing level; the final row holds their relative changes.
    """
    rows = []
    for factor in (1, 2):
        n = cfg.grid_points * factor
        params = cfg.cavity()
        run = run_squeezing(params, cfg.delta, cfg.power_fraction, n_points=n,
                            compute_moments=False)
        k_eff = effective_mode_number(run.decomposition.xi)
        db1 = squeezing_db(squeezed_variance(float(run.decomposition.xi[0]),
                                             params))
        span = cfg.grid_span or 16.0 * max(params.gamma_p, params.gamma)
        p_ratio = threshold_power_ratio(cfg.delta, params,
                                        make_grid(span, n), cfg.power_def)
        rows.append([float(n), k_eff, p_ratio, db1])
    base, doubled = rows
    rel = [abs(doubled[i] - base[i]) / abs(base[i]) for i in (1, 2, 3)]
    rows.append([0.0] + rel)
    return Table(
        command="convergence",
        columns=("grid_points", "K", "p_ratio", "db1"),
        rows=rows,
        meta={"note": "last row holds relative changes (grid_points column 0)",
              "power_def": cfg.power_def},
    )


def with_doubled_grid(table_fn, cfg: RunConfig, **kwargs) -> Table:
    """Run a sweep at the base and doubled grid, appending change columns."""
    base = table_fn(cfg, **kwargs)
    fine = table_fn(cfg.with_overrides(grid_points=2 * cfg.grid_points),
                    **kwargs)
    cols = list(base.columns)
    value_cols = range(1, len(cols))
    new_cols = cols + [f"relchg_{cols[i]}" for i in value_cols]
    rows = []
    for r0, r1 in zip(base.rows, fine.rows):
        changes = []
        for i in value_cols:
            denom = abs(r0[i]) if r0[i] != 0 else 1.0
            changes.append(abs(r1[i] - r0[i]) / denom)
        rows.append(list(r0) + changes)
    meta = dict(base.meta)
    meta["convergence"] = "doubled grid_points appended as relchg_* columns"
    return Table(command=base.command, columns=tuple(new_cols), rows=rows,
                 meta=meta)
