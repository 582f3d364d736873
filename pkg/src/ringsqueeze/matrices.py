"""Frequency-domain generator and input-output scattering matrices.

The 2n x 2n generator stacks annihilation and creation components,

    M = [[D, E], [conj(E), conj(D)]],

with D_jj = i nu_j - gamma/2 on the diagonal and the symmetric pair-coupling
kernel E_jk = kappa * eps(nu_j + nu_k) * step. The core scattering matrix
I + gamma M^{-1} is the lossless Bogoliubov factor; dressing it with the
gamma_c/gamma beamsplitters reproduces the direct input-output blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AtOrAboveThresholdError, InvalidArgumentError
from .grids import CavityParams, FrequencyGrid, PumpField, sample_at_sums


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """Assembled generator with its diagonal and coupling blocks."""

    n: int
    d_diag: np.ndarray          # length-n vector, i*nu_j - gamma/2
    e_block: np.ndarray         # n x n complex symmetric
    matrix: np.ndarray          # 2n x 2n assembled form

    def eigenvalue_max_real(self) -> float:
        """Largest real part of the generator spectrum (stability check)."""
        return float(np.max(np.linalg.eigvals(self.matrix).real))


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    """Core Bogoliubov factor and the four-port input-output blocks.

    ``core`` maps the beamsplitter-combined port; a/b blocks address the
    bus input, c/d blocks the intrinsic-loss port:

        a_out = A a_in + B a_in^dag + C a^(i) + D a^(i)^dag.
    """

    n: int
    core: np.ndarray            # 2n x 2n
    a_block: np.ndarray         # I + gamma_c X
    b_block: np.ndarray         # gamma_c Y
    c_block: np.ndarray         # sqrt(gamma_c gamma_i) X
    d_block: np.ndarray         # sqrt(gamma_c gamma_i) Y
    symplectic_residual: float

    @property
    def core_a(self) -> np.ndarray:
        return self.core[: self.n, : self.n]

    @property
    def core_b(self) -> np.ndarray:
        return self.core[: self.n, self.n :]


def build_generator(pump: PumpField, params: CavityParams,
                    grid: FrequencyGrid) -> BlockMatrix:
    """Assemble the frequency-domain generator from an intracavity pump.

    The kernel carries the midpoint quadrature weight ``grid.step`` so the
    discrete operator collocates the continuum integral; the diagonal
    carries none.
    """
    if pump.kind != "intracavity":
        raise InvalidArgumentError("build_generator expects an intracavity pump")
    gamma = params.gamma
    eps_sum = sample_at_sums(pump, grid)
    e_block = params.kappa * eps_sum * grid.step
    d_diag = 1j * grid.points - gamma / 2.0
    n = grid.n_points
    matrix = np.empty((2 * n, 2 * n), dtype=complex)
    matrix[:n, :n] = np.diag(d_diag)
    matrix[:n, n:] = e_block
    matrix[n:, :n] = e_block.conj()
    matrix[n:, n:] = np.diag(d_diag.conj())
    return BlockMatrix(n=n, d_diag=d_diag, e_block=e_block, matrix=matrix)


def symplectic_residual_of(core: np.ndarray) -> float:
    """Bogoliubov-identity residual of a doubled-form matrix.

    Returns max(||A A^dag - B B^dag - I||, ||A B^T - B A^T||) in the
    2-norm, relative to ||A||^2.
    """
    n2 = core.shape[0]
    n = n2 // 2
    A = core[:n, :n]
    B = core[:n, n:]
    norm_a = np.linalg.norm(A, 2)
    r1 = np.linalg.norm(A @ A.conj().T - B @ B.conj().T - np.eye(n), 2)
    r2 = np.linalg.norm(A @ B.T - B @ A.T, 2)
    return float(max(r1, r2) / norm_a**2)


def core_scattering(gen: BlockMatrix, params: CavityParams) -> ScatteringMatrix:
    """Invert the generator and form the core and input-output blocks.

    Dense LU solve; a singular generator means the pump is at or above
    threshold and raises.
    """
    gamma = params.gamma
    n = gen.n
    eye = np.eye(2 * n, dtype=complex)
    try:
        minv = np.linalg.solve(gen.matrix, eye)
    except np.linalg.LinAlgError as exc:
        raise AtOrAboveThresholdError(
            "generator is singular; pump at or above threshold"
        ) from exc
    core = eye + gamma * minv
    x = minv[:n, :n]
    y = minv[:n, n:]
    root = np.sqrt(params.gamma_c * params.gamma_i)
    sm = ScatteringMatrix(
        n=n,
        core=core,
        a_block=np.eye(n) + params.gamma_c * x,
        b_block=params.gamma_c * y,
        c_block=root * x,
        d_block=root * y,
        symplectic_residual=symplectic_residual_of(core),
    )
    return sm


def io_matrix(sm: ScatteringMatrix, params: CavityParams) -> np.ndarray:
    """Full 4n x 4n map from (a_in, a_in^dag, a^i, a^i^dag) to the outputs.

    Rows order the bus output doubled pair first, then the loss-port
    output; assembled from the stored blocks, so it matches the direct
    form by construction.
    """
    n = sm.n
    ratio = params.gamma_i / params.gamma_c
    e_self = np.eye(n) + ratio * (sm.a_block - np.eye(n))
    out = np.empty((4 * n, 4 * n), dtype=complex)

    def doubled(upper_left, upper_right):
        return np.block([[upper_left, upper_right],
                         [upper_right.conj(), upper_left.conj()]])

    out[: 2 * n, : 2 * n] = doubled(sm.a_block, sm.b_block)
    out[: 2 * n, 2 * n :] = doubled(sm.c_block, sm.d_block)
    out[2 * n :, : 2 * n] = doubled(sm.c_block, sm.d_block)
    out[2 * n :, 2 * n :] = doubled(e_self, ratio * sm.b_block)
    return out


def factorized_io_blocks(sm: ScatteringMatrix, params: CavityParams):
    """Input-output blocks via the beamsplitter-core-beamsplitter route.

    Conjugates blockdiag(core, I) with the two gamma_c/gamma beamsplitters
    and returns (A, B, C, D) acting on (a_in, a_in^dag, a^i, a^i^dag).
    Algebraically identical to the direct blocks; kept separate so the
    identity can be asserted rather than assumed.
    """
    gamma = params.gamma
    c = np.sqrt(params.gamma_c / gamma)
    s = np.sqrt(params.gamma_i / gamma)
    n = sm.n
    i2n = np.eye(2 * n, dtype=complex)
    z = np.zeros((2 * n, 2 * n), dtype=complex)
    big = np.block([[sm.core, z], [z, i2n]])
    bs_out = np.block([[c * i2n, -s * i2n], [s * i2n, c * i2n]])
    bs_in = np.block([[c * i2n, s * i2n], [-s * i2n, c * i2n]])
    io = bs_out @ big @ bs_in
    return (
        io[:n, :n],
        io[:n, n : 2 * n],
        io[:n, 2 * n : 3 * n],
        io[:n, 3 * n :],
    )


def stability_margin(gen: BlockMatrix) -> float:
    """Distance of the generator spectrum from the imaginary axis.

    Positive below threshold (all eigenvalue real parts negative).
    """
    return -gen.eigenvalue_max_real()
