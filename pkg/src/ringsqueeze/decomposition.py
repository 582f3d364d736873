"""Bloch-Messiah factorization of the core scattering matrix.

The core [[A, B], [conj(B), conj(A)]] factors into independent single-mode
squeezers P diag(cosh xi, e^{i theta} sinh xi) Q^dag-assembly. A's SVD fixes
P, Q and the amplitudes; the rotated coupling block C = P^dag B conj(Q) is
diagonal outside degenerate groups and is re-diagonalized inside them by the
Autonne-Takagi factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import sqrtm

from .errors import DecompositionUnreliableError, InvalidArgumentError
from .grids import FrequencyGrid
from .matrices import ScatteringMatrix

XI_CLAMP = 1e-12
DEGENERACY_TOL = 1e-8
COUPLING_TOL = 1e-10
RESIDUAL_GATE = 1e-6


@dataclass(frozen=True, eq=False)
class SqueezingDecomposition:
    """Squeezing amplitudes, phases, and the mode unitaries.

    xi is sorted descending; q_unitary / p_unitary columns are the input
    and output characteristic modes in grid-bin components (unit vectors).
    """

    xi: np.ndarray
    theta: np.ndarray
    q_unitary: np.ndarray
    p_unitary: np.ndarray
    reconstruction_residual: float

    @property
    def n(self) -> int:
        return len(self.xi)


@dataclass(frozen=True, eq=False)
class ModeShape:
    """Unit-normalized spectral profile on a grid: step * sum |f|^2 = 1."""

    grid: FrequencyGrid
    amplitude: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitude, dtype=complex)
        norm = self.grid.step * float(np.sum(np.abs(amp) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise InvalidArgumentError(
                f"mode shape normalization step*sum|f|^2 = {norm!r}, expected 1"
            )
        amp.flags.writeable = False
        object.__setattr__(self, "amplitude", amp)


def mode_shape_from_vector(vec: np.ndarray, grid: FrequencyGrid) -> ModeShape:
    """Wrap a unit grid-bin vector as a step-normalized ModeShape."""
    amp = np.asarray(vec, dtype=complex) / np.sqrt(grid.step)
    amp = amp / np.sqrt(grid.step * np.sum(np.abs(amp) ** 2))
    return ModeShape(grid=grid, amplitude=amp)


def takagi(sym: np.ndarray, tol: float = 1e-10):
    """Autonne-Takagi factorization sym = U diag(t) U^T of a symmetric matrix.

    Returns (U, t) with t real, nonnegative, descending. Real symmetric
    input goes through the eigendecomposition (robust for degenerate
    spectra); complex input uses the SVD route with a symmetric square
    root aligning the left and right singular bases.
    """
    sym = np.asarray(sym, dtype=complex)
    if sym.ndim != 2 or sym.shape[0] != sym.shape[1]:
        raise InvalidArgumentError("takagi expects a square matrix")
    scale = np.linalg.norm(sym)
    if np.linalg.norm(sym - sym.T) > tol * max(scale, 1.0):
        raise InvalidArgumentError("takagi expects a (complex) symmetric matrix")
    n = sym.shape[0]
    if scale == 0.0:
        return np.eye(n, dtype=complex), np.zeros(n)

    if np.linalg.norm(sym.imag) <= tol * scale:
        lam, v = np.linalg.eigh(sym.real)
        t = np.abs(lam)
        phases = np.where(lam >= 0, 1.0 + 0j, 1j)
        u = v.astype(complex) * phases[None, :]
        order = np.argsort(-t, kind="stable")
        return u[:, order], t[order]

    u, d, vh = np.linalg.svd(sym)
    # vh^T = u W with W unitary, symmetric within degenerate blocks
    w = u.conj().T @ vh.T
    uu = u @ sqrtm(w)
    # clean residual phases on the recovered values
    diag = np.diag(uu.conj().T @ sym @ uu.conj())
    ph = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    uu = uu * np.sqrt(ph)[None, :]
    return uu, d


def _group_indices(values: np.ndarray, tol: float) -> list[list[int]]:
    """Chain-cluster sorted values: gaps below tol join a group."""
    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if abs(values[i] - values[i - 1]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _retakagi_groups(p, q, b_block, groups):
    """Re-diagonalize the coupling block within each listed group."""
    c = p.conj().T @ b_block @ q.conj()
    for g in groups:
        if len(g) < 2:
            continue
        idx = np.ix_(g, g)
        sub = c[idx]
        sub = 0.5 * (sub + sub.T)
        u_g, _ = takagi(sub, tol=1e-6)
        p[:, g] = p[:, g] @ u_g
        q[:, g] = q[:, g] @ u_g
    return p, q


def bloch_messiah(core: ScatteringMatrix,
                  degeneracy_tol: float = DEGENERACY_TOL,
                  residual_gate: float = RESIDUAL_GATE) -> SqueezingDecomposition:
    """Factor the core into independent Bogoliubov squeezers.

    Raises DecompositionUnreliableError when the core's symplectic residual
    exceeds the gate. Groups of singular values within degeneracy_tol of
    each other (relative to the largest) are re-diagonalized together;
    groups that remain coupled through the off-diagonal of the rotated B
    block are merged and re-diagonalized until the coupling is below
    COUPLING_TOL, which keeps the reconstruction at the roundoff floor even
    for the near-degenerate +-nu pairs of symmetric pumps.
    """
    if core.symplectic_residual > residual_gate:
        raise DecompositionUnreliableError(core.symplectic_residual, residual_gate)
    n = core.n
    a_block = core.core_a
    b_block = core.core_b

    p, s, qh = np.linalg.svd(a_block)
    q = qh.conj().T
    s = np.where(s < 1.0, 1.0, s)
    sig0 = s[0]

    groups = _group_indices(s, degeneracy_tol * sig0)
    p, q = _retakagi_groups(p, q, b_block, groups)

    # merge groups still coupled via C's off-diagonal, then re-diagonalize
    for _ in range(8):
        c = p.conj().T @ b_block @ q.conj()
        mask = np.abs(c) > COUPLING_TOL * max(sig0, 1.0)
        np.fill_diagonal(mask, False)
        if not mask.any():
            break
        parent = list(range(len(groups)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        owner = np.empty(n, dtype=int)
        for gi, g in enumerate(groups):
            owner[g] = gi
        rows, cols = np.nonzero(mask)
        for r, cc in zip(rows, cols):
            a, b = find(owner[r]), find(owner[cc])
            if a != b:
                parent[max(a, b)] = min(a, b)
        merged: dict[int, list[int]] = {}
        for gi, g in enumerate(groups):
            merged.setdefault(find(gi), []).extend(g)
        groups = [sorted(v) for _, v in sorted(merged.items())]
        p, q = _retakagi_groups(p, q, b_block, groups)

    # global column phases: largest-magnitude Q entry real positive; ties
    # (mirror-symmetric lobes) anchor on the lowest bin so the convention
    # is stable against roundoff
    for k in range(n):
        mags = np.abs(q[:, k])
        j = int(np.argmax(mags >= (1.0 - 1e-9) * mags.max()))
        ph = q[j, k]
        if abs(ph) > 0:
            ph = ph / abs(ph)
            q[:, k] = q[:, k] / ph
            p[:, k] = p[:, k] / ph

    c = p.conj().T @ b_block @ q.conj()
    # arccosh of A's singular values loses half the digits near sigma = 1;
    # the B-side diagonal gives sinh xi at full precision
    xi = np.arcsinh(np.abs(np.diag(c)))
    xi[xi < XI_CLAMP] = 0.0
    theta = np.mod(np.angle(np.diag(c)), 2.0 * np.pi)

    # descending xi; ties broken by ascending mode-center detuning
    order = _sort_order(xi, q, degeneracy_tol * sig0)
    xi, theta = xi[order], theta[order]
    p, q = p[:, order], q[:, order]

    a_rec = (p * np.cosh(xi)[None, :]) @ q.conj().T
    b_rec = (p * (np.exp(1j * theta) * np.sinh(xi))[None, :]) @ q.T
    denom = np.linalg.norm(a_block)
    resid = max(
        np.linalg.norm(a_rec - a_block),
        np.linalg.norm(b_rec - b_block),
    ) / denom
    return SqueezingDecomposition(
        xi=xi, theta=theta, q_unitary=q, p_unitary=p,
        reconstruction_residual=float(resid),
    )


def _sort_order(xi: np.ndarray, q: np.ndarray, tie_tol: float) -> np.ndarray:
    n = len(xi)
    centers = np.empty(n)
    bins = np.arange(n) - (n - 1) / 2.0
    for k in range(n):
        w = np.abs(q[:, k]) ** 2
        centers[k] = float(bins @ w)
    cosh_xi = np.cosh(xi)
    keys = np.round(cosh_xi / max(tie_tol, 1e-300))
    return np.lexsort((centers, -keys))


def characteristic_modes(dec: SqueezingDecomposition, k: int,
                         grid: FrequencyGrid) -> tuple[ModeShape, ModeShape]:
    """k-th input (Q column) and output (P column) characteristic modes."""
    if not (0 <= k < dec.n):
        raise InvalidArgumentError(f"mode index {k} out of range [0, {dec.n})")
    return (
        mode_shape_from_vector(dec.q_unitary[:, k], grid),
        mode_shape_from_vector(dec.p_unitary[:, k], grid),
    )
