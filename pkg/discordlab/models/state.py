from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from discordlab.config import Config
from discordlab.errors import ValidationError

ComplexMatrix = np.ndarray


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def max_asymmetry(matrix: np.ndarray) -> float:
    """Largest entry of |X - X^dagger|"""
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def hermitize(matrix: np.ndarray, tol: float = None) -> np.ndarray:
    """
    Symmetrize a nearly Hermitian matrix as (X + X^dagger)/2.

    Inputs whose asymmetry exceeds the tolerance are rejected rather than
    silently repaired.
    """
    tol = Config.HERMITIAN_TOL if tol is None else tol
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise NonSquare(f"Expected a square matrix, got shape {matrix.shape}")
    bad = int(np.count_nonzero(~np.isfinite(matrix)))
    if bad:
        raise NotFinite(f"Matrix is not finite: {bad} of {matrix.size} entries are NaN or Inf")
    asym = max_asymmetry(matrix)
    if asym > tol:
        raise NotHermitian(
            f"Matrix is not Hermitian: max |X - X^dagger| = {asym:.3e} > {tol:.1e}",
            asymmetry=asym
        )
    return (matrix + matrix.conj().T) / 2


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted non-increasing, eigenvectors as aligned columns"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        vecs = self.eigenvectors
        return (vecs * self.eigenvalues) @ vecs.conj().T


@dataclass(frozen=True)
class DensityMatrix:
    """
    A quantum state on C^m (x) C^n.

    The matrix is stored in the computational product basis |i>_A (x) |j>_B
    with flat index i*n + j. Instances are immutable; build them through
    `from_array`, which enforces the state invariants.
    """
    dims: Tuple[int, int]
    matrix: np.ndarray = field(repr=False)

    @classmethod
    def from_array(cls, matrix, dims: Tuple[int, int],
                   hermitian_tol: float = None, trace_tol: float = None,
                   psd_floor: float = None) -> 'DensityMatrix':
        trace_tol = Config.TRACE_TOL if trace_tol is None else trace_tol
        psd_floor = Config.PSD_FLOOR if psd_floor is None else psd_floor

        m, n = (int(d) for d in dims)
        if m < 1 or n < 1:
            raise DimensionMismatch(f"Subsystem dimensions must be positive, got {dims}")
        matrix = hermitize(matrix, hermitian_tol)
        if matrix.shape[0] != m * n:
            raise DimensionMismatch(
                f"Matrix of size {matrix.shape[0]} does not match dims {m}x{n} = {m * n}"
            )

        trace = float(np.trace(matrix).real)
        if abs(trace - 1.0) > trace_tol:
            raise NotUnitTrace(f"Trace is {trace!r}, deviation {abs(trace - 1.0):.3e} > {trace_tol:.1e}")

        min_eig = float(np.linalg.eigvalsh(matrix)[0])
        if min_eig < -psd_floor:
            raise NotPositive(
                f"State is not positive semidefinite: min eigenvalue {min_eig:.3e} < {-psd_floor:.1e}",
                min_eigenvalue=min_eig
            )
        return cls(dims=(m, n), matrix=_frozen(matrix))

    @property
    def m(self) -> int:
        return self.dims[0]

    @property
    def n(self) -> int:
        return self.dims[1]

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    def with_dims(self, dims: Tuple[int, int]) -> 'DensityMatrix':
        """Same matrix, different declared bipartition"""
        m, n = (int(d) for d in dims)
        if m * n != self.dim:
            raise DimensionMismatch(
                f"Cannot repartition {self.m}x{self.n} into {m}x{n}: {self.dim} != {m * n}"
            )
        return DensityMatrix(dims=(m, n), matrix=self.matrix)

    def to_dict(self) -> Dict:
        return {
            'dims': list(self.dims),
            'matrix': [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]
        }


@dataclass(frozen=True)
class MeasurementBasis:
    """Complete rank-1 projective measurement on subsystem A (columns of `vectors`)"""
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=np.complex128)
        if vectors.ndim != 2 or vectors.shape[0] != vectors.shape[1]:
            raise IncompleteBasis(
                f"Need m orthonormal vectors in C^m, got array of shape {vectors.shape}"
            )
        gram = vectors.conj().T @ vectors
        deviation = float(np.max(np.abs(gram - np.eye(vectors.shape[0]))))
        if deviation > Config.BASIS_TOL:
            raise IncompleteBasis(
                f"Projectors do not sum to the identity: Gram deviation {deviation:.3e}"
            )
        object.__setattr__(self, 'vectors', _frozen(vectors))

    @classmethod
    def computational(cls, m: int) -> 'MeasurementBasis':
        return cls(np.eye(m, dtype=np.complex128))

    @property
    def m(self) -> int:
        return self.vectors.shape[0]

    def projectors(self):
        return [np.outer(v, v.conj()) for v in self.vectors.T]

    def to_dict(self) -> Dict:
        return {
            'vectors': [[[float(z.real), float(z.imag)] for z in col] for col in self.vectors.T]
        }


@dataclass(frozen=True)
class WernerParams:
    m: int
    z: float


class NonSquare(ValidationError):
    """Matrix is not square"""
    pass


class NotFinite(ValidationError):
    """Matrix contains NaN or infinite entries"""
    pass


class NotHermitian(ValidationError):
    """Matrix asymmetry exceeds the Hermiticity tolerance"""

    def __init__(self, message: str, asymmetry: float = None):
        super().__init__(message)
        self.asymmetry = asymmetry


class NotUnitTrace(ValidationError):
    """State trace differs from one"""
    pass


class NotPositive(ValidationError):
    """State has an eigenvalue below the PSD floor"""

    def __init__(self, message: str, min_eigenvalue: float = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class DimensionMismatch(ValidationError):
    """Declared dimensions do not fit the data"""
    pass


class IncompleteBasis(ValidationError):
    """Measurement vectors are not a complete orthonormal set"""
    pass
