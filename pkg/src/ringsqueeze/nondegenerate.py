"""Signal-idler generalization: the doubled generator over two bands.

Each band keeps its own detuning axis relative to its own carrier; the pump
couples a1 to a2^dag and a2 to a1^dag through the same kernel. Stacking the
bands as one 2n-component mode vector reproduces the degenerate block
structure, so the core scattering, Bloch-Messiah, and observables machinery
apply unchanged to the 4n x 4n system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .grids import CavityParams, FrequencyGrid, PumpField, sample_at_sums
from .matrices import BlockMatrix
from .threshold import max_gain


@dataclass(frozen=True, eq=False)
class JointBlockMatrix:
    """4n x 4n generator over the ordering (a1, a2, a1^dag, a2^dag)."""

    n: int
    d1_diag: np.ndarray
    d2_diag: np.ndarray
    e_block: np.ndarray          # n x n, couples a1 <-> a2^dag and a2 <-> a1^dag
    matrix: np.ndarray

    def as_block_matrix(self) -> BlockMatrix:
        """View as a degenerate-style generator over the stacked 2n modes."""
        n2 = 2 * self.n
        return BlockMatrix(
            n=n2,
            d_diag=np.concatenate([self.d1_diag, self.d2_diag]),
            e_block=self.matrix[:n2, n2:],
            matrix=self.matrix,
        )


def build_joint_generator(pump: PumpField, params1: CavityParams,
                          params2: CavityParams,
                          grid: FrequencyGrid) -> JointBlockMatrix:
    """Assemble the two-band generator from one intracavity pump.

    Both bands must share the total decay gamma (the joint core factor
    I + gamma M^{-1} has a single rate); coupling rates may differ.
    """
    if pump.kind != "intracavity":
        raise InvalidArgumentError("build_joint_generator expects an intracavity pump")
    if abs(params1.gamma - params2.gamma) > 1e-12 * params1.gamma:
        raise InvalidArgumentError(
            "signal and idler must share the total decay rate gamma"
        )
    n = grid.n_points
    kappa = params1.kappa
    e = kappa * sample_at_sums(pump, grid) * grid.step
    d1 = 1j * grid.points - params1.gamma / 2.0
    d2 = 1j * grid.points - params2.gamma / 2.0
    zero = np.zeros((n, n), dtype=complex)
    e_top = np.block([[zero, e], [e, zero]])
    d_top = np.diag(np.concatenate([d1, d2]))
    matrix = np.block([[d_top, e_top], [e_top.conj(), d_top.conj()]])
    return JointBlockMatrix(n=n, d1_diag=d1, d2_diag=d2, e_block=e, matrix=matrix)


def joint_max_gain(gen: JointBlockMatrix) -> float:
    """Largest Takagi value of the 2n x 2n symmetric coupling arrangement."""
    n = gen.n
    zero = np.zeros((n, n), dtype=complex)
    arrangement = np.block([[zero, gen.e_block], [gen.e_block, zero]])
    return max_gain(arrangement)


def sector_weights(column: np.ndarray) -> tuple[float, float]:
    """Fraction of a joint-mode column's weight in the signal and idler bands."""
    n = len(column) // 2
    w1 = float(np.sum(np.abs(column[:n]) ** 2))
    w2 = float(np.sum(np.abs(column[n:]) ** 2))
    total = w1 + w2
    return w1 / total, w2 / total
