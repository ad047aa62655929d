"""
Dense complex matrix primitives.

All bipartite operations use the computational product basis |i>_A (x) |j>_B
with flat index i*n + j, so a (mn x mn) matrix reshapes to (m, n, m, n).
"""
from typing import Literal, Tuple

import numpy as np

from discordlab.errors import ValidationError
from discordlab.models.state import (
    ComplexMatrix, DensityMatrix, DimensionMismatch, IncompleteBasis,
    MeasurementBasis, Spectrum, hermitize
)


class LinalgService:
    """Spectra, norms and the bipartite maps every measure is built from"""

    @staticmethod
    def eig_hermitian(matrix: ComplexMatrix, tol: float = None) -> Spectrum:
        """
        Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

        LAPACK's divide-and-conquer driver is deterministic for a fixed input,
        which keeps scan outputs reproducible.
        """
        matrix = hermitize(matrix, tol)
        values, vectors = np.linalg.eigh(matrix)
        return Spectrum(eigenvalues=values[::-1].copy(), eigenvectors=vectors[:, ::-1].copy())

    @staticmethod
    def eigvals_hermitian(matrix: ComplexMatrix, tol: float = None) -> np.ndarray:
        """Eigenvalues only, sorted descending"""
        return np.linalg.eigvalsh(hermitize(matrix, tol))[::-1]

    @staticmethod
    def schatten_norm(matrix: ComplexMatrix, p: float = 1) -> float:
        """
        Schatten p-norm (sum |lambda_i|^p)^(1/p) of a Hermitian matrix.

        p=1 is the trace norm, p=2 the Hilbert-Schmidt (Frobenius) norm.
        """
        if p < 1:
            raise InvalidOrder(f"Schatten norm order must be >= 1, got {p}")
        values = np.abs(LinalgService.eigvals_hermitian(matrix))
        if np.isinf(p):
            return float(values.max(initial=0.0))
        if p == 1:
            return float(values.sum())
        return float(np.sum(values ** p) ** (1.0 / p))

    @staticmethod
    def partial_transpose_operator(matrix: ComplexMatrix, dims: Tuple[int, int]) -> ComplexMatrix:
        """Transpose on the A index: <i j|X^T_A|k l> = <k j|X|i l>"""
        m, n = dims
        matrix = np.asarray(matrix)
        if matrix.shape != (m * n, m * n):
            raise DimensionMismatch(f"Operator of shape {matrix.shape} does not act on {m}x{n}")
        return matrix.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)

    @staticmethod
    def partial_transpose(rho: DensityMatrix) -> ComplexMatrix:
        return LinalgService.partial_transpose_operator(rho.matrix, rho.dims)

    @staticmethod
    def partial_trace(rho: DensityMatrix, trace_out: Literal['A', 'B'] = 'B') -> ComplexMatrix:
        """Reduced state of the subsystem that is kept"""
        m, n = rho.dims
        blocks = rho.matrix.reshape(m, n, m, n)
        if trace_out == 'B':
            return np.einsum('ijkj->ik', blocks)
        if trace_out == 'A':
            return np.einsum('ijil->jl', blocks)
        raise ValidationError(f"Subsystem selector must be 'A' or 'B', got {trace_out!r}")

    @staticmethod
    def tensor(left: ComplexMatrix, right: ComplexMatrix) -> ComplexMatrix:
        return np.kron(left, right)

    @staticmethod
    def repartition(rho: DensityMatrix, new_dims: Tuple[int, int]) -> DensityMatrix:
        """Reinterpret the same matrix under another bipartition m' x n' = m x n"""
        return rho.with_dims(new_dims)

    @staticmethod
    def rotate_A(matrix: ComplexMatrix, unitary: np.ndarray, n: int) -> ComplexMatrix:
        """(U^dagger (x) I) X (U (x) I): X expressed in the basis given by the columns of U"""
        op = np.kron(unitary, np.eye(n))
        return op.conj().T @ matrix @ op

    @staticmethod
    def block_diagonal_A(matrix: ComplexMatrix, m: int, n: int) -> ComplexMatrix:
        """Zero every off-diagonal A block: sum_k (|k><k| (x) I) X (|k><k| (x) I)"""
        blocks = np.asarray(matrix).reshape(m, n, m, n)
        kept = np.zeros_like(blocks)
        idx = np.arange(m)
        kept[idx, :, idx, :] = blocks[idx, :, idx, :]
        return kept.reshape(m * n, m * n)

    @staticmethod
    def dephase_matrix_A(matrix: ComplexMatrix, basis: MeasurementBasis, n: int) -> ComplexMatrix:
        m = basis.m
        vectors = basis.vectors
        in_basis = LinalgService.rotate_A(matrix, vectors, n)
        kept = LinalgService.block_diagonal_A(in_basis, m, n)
        return LinalgService.rotate_A(kept, vectors.conj().T, n)

    @staticmethod
    def dephase_A(rho: DensityMatrix, basis: MeasurementBasis = None) -> DensityMatrix:
        """
        Measurement map on A: sum_k (P_k (x) I) rho (P_k (x) I).

        The output is classical-quantum in `basis` and the map is idempotent.
        """
        m, n = rho.dims
        basis = MeasurementBasis.computational(m) if basis is None else basis
        if basis.m != m:
            raise IncompleteBasis(f"Basis has {basis.m} vectors but subsystem A has dimension {m}")
        dephased = LinalgService.dephase_matrix_A(rho.matrix, basis, n)
        return DensityMatrix.from_array(dephased, rho.dims)


class InvalidOrder(ValidationError):
    """Schatten norm order below one"""
    pass
