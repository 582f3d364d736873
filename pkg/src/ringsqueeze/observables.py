"""Squeezing observables: variances, mode number, moments, homodyne, widths.

Second moments are stored in the unit-commutator bin convention
([a_j, a_k^dag] = delta_jk); mode shapes carry the step normalization and
are converted with sqrt(step) when contracted against moments, which gives
projected operators a unit commutator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import ModeShape, SqueezingDecomposition
from .errors import (
    AmbiguousFwhmError,
    InvalidArgumentError,
    UndefinedModeNumberError,
)
from .grids import CavityParams
from .matrices import ScatteringMatrix


@dataclass(frozen=True, eq=False)
class GaussianMoments:
    """Vacuum-input second moments of the bus output field.

    m_aa[j, k] = <a_j a_k>, m_ada[j, k] = <a_j^dag a_k>, unit-commutator
    bins.
    """

    m_aa: np.ndarray
    m_ada: np.ndarray


@dataclass(frozen=True)
class HomodyneResult:
    """Quadrature variance data for one local-oscillator mode."""

    nbar: float
    pair_moment: complex
    phi_star: float
    min_variance: float

    def variance(self, phi: float) -> float:
        return float(
            0.5 + self.nbar + np.real(np.exp(2j * phi) * self.pair_moment)
        )


@dataclass(frozen=True)
class SqueezeReport:
    """Per-mode squeezing summary for one parameter point."""

    variances: np.ndarray
    db: np.ndarray
    K: float
    fwhm1: float


def squeezed_variance(xi: float, params: CavityParams) -> float:
    """Minimum quadrature variance of a mode with squeezing amplitude xi.

    (gamma_i/gamma + (gamma_c/gamma) e^{-2 xi}) / 2: the loss port floors
    the variance at gamma_i / (2 gamma).
    """
    if xi < 0:
        raise InvalidArgumentError("xi must be >= 0")
    g = params.gamma
    return 0.5 * (params.gamma_i / g + params.gamma_c / g * np.exp(-2.0 * xi))


def effective_mode_number(xi: np.ndarray) -> float:
    """Schmidt-like mode count (sum sinh^2 xi)^2 / sum sinh^4 xi."""
    s2 = np.sinh(np.asarray(xi, dtype=float)) ** 2
    denom = float(np.sum(s2**2))
    if denom == 0.0:
        raise UndefinedModeNumberError(
            "all squeezing amplitudes are zero; no pair generation"
        )
    return float(np.sum(s2)) ** 2 / denom


def output_moments(sm: ScatteringMatrix) -> GaussianMoments:
    """Propagate vacuum through the four-port scattering blocks."""
    b, d = sm.b_block, sm.d_block
    a, c = sm.a_block, sm.c_block
    m_ada = (b @ b.conj().T + d @ d.conj().T).T
    m_aa = a @ b.T + c @ d.T
    return GaussianMoments(m_aa=m_aa, m_ada=m_ada)


def homodyne_variance(moments: GaussianMoments, lo: ModeShape,
                      phi: float | None = None):
    """Quadrature statistics of the output field projected on an LO mode.

    Returns a HomodyneResult; when ``phi`` is given, returns the variance
    at that phase instead. Convention X(phi) = (a e^{i phi} + a^dag
    e^{-i phi}) / sqrt(2), so the minimizing phase is (pi - arg<aa>)/2.
    """
    u = np.sqrt(lo.grid.step) * lo.amplitude
    norm = float(np.sum(np.abs(u) ** 2))
    if abs(norm - 1.0) > 1e-8:
        raise InvalidArgumentError("local oscillator mode is not unit-normalized")
    nbar = float(np.real(u @ moments.m_ada @ u.conj()))
    pair = complex(u.conj() @ moments.m_aa @ u.conj())
    phi_star = float(np.mod((np.pi - np.angle(pair)) / 2.0, np.pi))
    result = HomodyneResult(
        nbar=nbar,
        pair_moment=pair,
        phi_star=phi_star,
        min_variance=0.5 + nbar - abs(pair),
    )
    if phi is not None:
        return result.variance(phi)
    return result


def mode_fwhm(mode: ModeShape) -> float:
    """Full width at half maximum of |f(nu)|^2, linearly interpolated.

    A profile crossing its half-maximum more than twice has no unique
    width and raises AmbiguousFwhmError carrying every crossing.
    """
    nu = mode.grid.points
    intensity = np.abs(mode.amplitude) ** 2
    half = float(np.max(intensity)) / 2.0
    above = intensity > half
    edges = np.nonzero(np.diff(above.astype(int)))[0]
    crossings = []
    for j in edges:
        y0, y1 = intensity[j], intensity[j + 1]
        crossings.append(nu[j] + (half - y0) * (nu[j + 1] - nu[j]) / (y1 - y0))
    if len(crossings) > 2:
        raise AmbiguousFwhmError(crossings)
    if len(crossings) < 2:
        raise AmbiguousFwhmError(crossings)
    return float(crossings[1] - crossings[0])


def squeezing_db(variance: float) -> float:
    """Shot-noise-relative squeezing in decibels (vacuum 0 dB, squeezing > 0)."""
    if not (variance > 0):
        raise InvalidArgumentError("variance must be positive")
    return float(-10.0 * np.log10(variance / 0.5))


def squeeze_report(dec: SqueezingDecomposition, params: CavityParams,
                   fwhm1: float = float("nan")) -> SqueezeReport:
    """Bundle per-mode variances, dB levels, and the mode number."""
    variances = np.array([squeezed_variance(x, params) for x in dec.xi])
    db = np.array([squeezing_db(v) for v in variances])
    try:
        k_eff = effective_mode_number(dec.xi)
    except UndefinedModeNumberError:
        k_eff = float("nan")
    return SqueezeReport(variances=variances, db=db, K=k_eff, fwhm1=fwhm1)
