"""Constructors for the state families and the random-state sampler"""
from typing import Sequence, Union

import numpy as np

from discordlab.config import Config
from discordlab.errors import ValidationError
from discordlab.models.state import ComplexMatrix, DensityMatrix, WernerParams

Seed = Union[int, np.random.SeedSequence]


class StateService:
    """Werner, Bell, classical-quantum and random states"""

    @staticmethod
    def swap_operator(m: int) -> ComplexMatrix:
        """F = sum_kl |k><l| (x) |l><k|"""
        flip = np.zeros((m, m, m, m), dtype=np.complex128)
        idx = np.arange(m)
        flip[idx[:, None], idx[None, :], idx[None, :], idx[:, None]] = 1.0
        return flip.reshape(m * m, m * m)

    @staticmethod
    def werner(params: WernerParams) -> DensityMatrix:
        """
        U (x) U invariant m x m state with tr(F rho) = z:

            rho = ((m - z) I + (m z - 1) F) / (m^3 - m)
        """
        m, z = int(params.m), float(params.z)
        if m < 2:
            raise InvalidDim(f"Werner state needs m >= 2, got {m}")
        if not -1.0 <= z <= 1.0:
            raise InvalidZ(f"Werner parameter z must lie in [-1, 1], got {z}")
        norm = m ** 3 - m
        matrix = ((m - z) * np.eye(m * m) + (m * z - 1) * StateService.swap_operator(m)) / norm
        return DensityMatrix.from_array(matrix, (m, m))

    @staticmethod
    def max_entangled(m: int) -> DensityMatrix:
        """|Phi><Phi| with |Phi> = sum_k |kk> / sqrt(m)"""
        if m < 2:
            raise InvalidDim(f"Maximally entangled state needs m >= 2, got {m}")
        phi = np.zeros(m * m, dtype=np.complex128)
        phi[np.arange(m) * (m + 1)] = 1.0 / np.sqrt(m)
        return DensityMatrix.from_array(np.outer(phi, phi.conj()), (m, m))

    @staticmethod
    def cq_state(probs: Sequence[float], blocks: Sequence[ComplexMatrix]) -> DensityMatrix:
        """Classical-quantum state sum_i p_i |i><i| (x) rho_i"""
        probs = np.asarray(probs, dtype=float)
        if probs.ndim != 1 or len(probs) != len(blocks):
            raise BlockDimensionMismatch(
                f"Need one block per probability, got {probs.size} probabilities and {len(blocks)} blocks"
            )
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > Config.TRACE_TOL:
            raise BadProbabilities(f"Probabilities must be non-negative and sum to 1, got {probs.tolist()}")

        blocks = [np.asarray(b, dtype=np.complex128) for b in blocks]
        n = blocks[0].shape[0]
        for i, block in enumerate(blocks):
            if block.shape != (n, n):
                raise BlockDimensionMismatch(f"Block {i} has shape {block.shape}, expected ({n}, {n})")
            # validates each block as a state on B
            DensityMatrix.from_array(block, (1, n))

        m = len(probs)
        matrix = np.zeros((m * n, m * n), dtype=np.complex128)
        for i, (p, block) in enumerate(zip(probs, blocks)):
            matrix[i * n:(i + 1) * n, i * n:(i + 1) * n] = p * block
        return DensityMatrix.from_array(matrix, (m, n))

    @staticmethod
    def make_rng(seed: Seed) -> np.random.Generator:
        """PCG64 generator; SeedSequence inputs keep spawned streams independent"""
        return np.random.Generator(np.random.PCG64(seed))

    @staticmethod
    def random_density(dim: int, rank: int = None, seed: Seed = 0) -> ComplexMatrix:
        """
        Sample from the induced (Ginibre) measure: G G^dagger / tr(G G^dagger)
        with G a dim x rank matrix of standard complex Gaussians.
        """
        rank = dim if rank is None else rank
        if dim < 1 or not 1 <= rank <= dim:
            raise BadRank(f"Rank must satisfy 1 <= rank <= dim, got rank={rank}, dim={dim}")
        rng = StateService.make_rng(seed)
        ginibre = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
        matrix = ginibre @ ginibre.conj().T
        matrix /= np.trace(matrix).real
        return (matrix + matrix.conj().T) / 2

    @staticmethod
    def random_state(dims, rank: int = None, seed: Seed = 0) -> DensityMatrix:
        m, n = dims
        return DensityMatrix.from_array(StateService.random_density(m * n, rank, seed), (m, n))

    @staticmethod
    def random_pure_product(dims, seed: Seed = 0) -> DensityMatrix:
        m, n = dims
        seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        left_seed, right_seed = seq.spawn(2)
        matrix = np.kron(StateService.random_density(m, 1, left_seed),
                         StateService.random_density(n, 1, right_seed))
        return DensityMatrix.from_array(matrix, (m, n))

    @staticmethod
    def haar_unitary(dim: int, seed: Seed = 0) -> np.ndarray:
        """
        Haar-random unitary: QR of a complex Ginibre matrix, with the phases
        of diag(R) moved into Q so the distribution is exactly Haar.
        """
        rng = StateService.make_rng(seed)
        z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
        q, r = np.linalg.qr(z)
        d = np.diagonal(r)
        return q * (d / np.abs(d))

    @staticmethod
    def local_unitary(rho: DensityMatrix, left: np.ndarray, right: np.ndarray) -> DensityMatrix:
        """(U (x) V) rho (U (x) V)^dagger"""
        op = np.kron(left, right)
        return DensityMatrix.from_array(op @ rho.matrix @ op.conj().T, rho.dims)


class InvalidZ(ValidationError):
    """Werner parameter outside [-1, 1]"""
    pass


class InvalidDim(ValidationError):
    """Dimension too small for the requested construction"""
    pass


class BadProbabilities(ValidationError):
    """Probability vector is negative somewhere or does not sum to one"""
    pass


class BlockDimensionMismatch(ValidationError):
    """Classical-quantum blocks disagree in number or size"""
    pass


class BadRank(ValidationError):
    """Requested rank outside 1..dim"""
    pass
