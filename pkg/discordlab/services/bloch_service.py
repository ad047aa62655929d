"""
Bloch decomposition of 2 x n states and the exact Hilbert-Schmidt discord
for a qubit measured side.

Operator basis on B: generalized Gell-Mann matrices normalized to
tr(beta_i beta_j) = 2 delta_ij, ordered as
  1. symmetric    E_jk + E_kj           for j < k, lexicographic in (j, k)
  2. antisymmetric -i (E_jk - E_kj)     for j < k, lexicographic in (j, k)
  3. diagonal     sqrt(2 / (l (l + 1))) (sum_{j<l} E_jj - l E_ll), l = 1..n-1
For n = 2 this is (sigma_x, sigma_y, sigma_z).
"""
from functools import lru_cache

import numpy as np

from discordlab.errors import ValidationError
from discordlab.models.reports import BlochForm
from discordlab.models.state import DensityMatrix
from discordlab.services.linalg_service import LinalgService

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]]
], dtype=np.complex128)


class BlochService:
    """Bloch coordinates (x, y, T) and the closed-form D2 for m = 2"""

    @staticmethod
    @lru_cache(maxsize=16)
    def gell_mann_basis(n: int) -> np.ndarray:
        """The n^2 - 1 generalized Gell-Mann matrices, stacked as (n^2-1, n, n)"""
        mats = []
        pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
        for j, k in pairs:
            mat = np.zeros((n, n), dtype=np.complex128)
            mat[j, k] = mat[k, j] = 1.0
            mats.append(mat)
        for j, k in pairs:
            mat = np.zeros((n, n), dtype=np.complex128)
            mat[j, k] = -1j
            mat[k, j] = 1j
            mats.append(mat)
        for l in range(1, n):
            diag = np.zeros(n)
            diag[:l] = 1.0
            diag[l] = -l
            mats.append(np.diag(diag * np.sqrt(2.0 / (l * (l + 1)))).astype(np.complex128))
        basis = np.array(mats).reshape(n * n - 1, n, n)
        basis.setflags(write=False)
        return basis

    @staticmethod
    def _require_qubit_a(rho: DensityMatrix):
        if rho.m != 2:
            raise NotQubitA(f"Bloch form needs a qubit on A, got {rho.m}x{rho.n}")

    @staticmethod
    def decompose_2xn(rho: DensityMatrix) -> BlochForm:
        BlochService._require_qubit_a(rho)
        n = rho.n
        blocks = rho.matrix.reshape(2, n, 2, n)
        beta = BlochService.gell_mann_basis(n)

        # R_mu = tr_A[(sigma_mu (x) I) rho], mu = 0 being the identity
        paulis = np.concatenate([np.eye(2, dtype=np.complex128)[None], PAULI])
        reduced = np.einsum('uki,ijkl->ujl', paulis, blocks)

        x = np.einsum('ujj->u', reduced[1:]).real
        y = (n / 2.0) * np.einsum('sjl,lj->s', beta, reduced[0]).real
        T = (n / 2.0) * np.einsum('sjl,ulj->us', beta, reduced[1:]).real
        return BlochForm(x=x, y=y, T=T, n=n)

    @staticmethod
    def reconstruct(form: BlochForm) -> np.ndarray:
        n = form.n
        beta = BlochService.gell_mann_basis(n)
        eye_b = np.eye(n)
        matrix = np.kron(np.eye(2), eye_b).astype(np.complex128)
        matrix += np.kron(np.einsum('i,ijk->jk', form.x, PAULI), eye_b)
        if n > 1:
            matrix += np.kron(np.eye(2), np.einsum('s,sjk->jk', form.y, beta))
            for i in range(3):
                matrix += np.kron(PAULI[i], np.einsum('s,sjk->jk', form.T[i], beta))
        return matrix / (2 * n)

    @staticmethod
    def gd2_closed_form(rho: DensityMatrix) -> float:
        """
        Exact unnormalized Hilbert-Schmidt discord of a 2 x n state.

        Measuring A along a unit vector e leaves the components of x and of the
        rows of T orthogonal to e, so

            D2 = (2n |x|^2 + 4 |T|_F^2 - lambda_max(2n x x^T + 4 T T^T)) / (4 n^2)

        which reduces to (|x|^2 + |T|^2 - lambda_max(x x^T + T T^T)) / 4 for n = 2.
        """
        form = BlochService.decompose_2xn(rho)
        n = form.n
        x, T = form.x, form.T
        kernel = 2 * n * np.outer(x, x) + 4 * T @ T.T
        lam_max = LinalgService.eig_hermitian(kernel.astype(np.complex128)).eigenvalues[0]
        value = (2 * n * x @ x + 4 * np.sum(T * T) - lam_max) / (4 * n * n)
        return float(max(value, 0.0))


class NotQubitA(ValidationError):
    """Subsystem A is not a qubit"""
    pass
