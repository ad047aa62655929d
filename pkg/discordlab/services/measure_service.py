import logging
from abc import ABC, abstractmethod
from typing import List, Optional, Tuple, Union

import numpy as np

from discordlab.config import Config
from discordlab.errors import NumericalError, ValidationError
from discordlab.models.reports import Convention, DiscordEstimate, Route
from discordlab.models.state import ComplexMatrix, DensityMatrix, MeasurementBasis
from discordlab.services.bloch_service import BlochService
from discordlab.services.linalg_service import LinalgService
from discordlab.services.optimizer_service import BasisOptimizer, BrentLineSearch
from discordlab.services.state_service import InvalidDim

logger = logging.getLogger(__name__)


class MeasureService:
    """Negativity in both conventions, Hilbert-Schmidt discord and trace-norm discord bounds"""

    # -----------------------------------------------------------------------
    # Negativity
    # -----------------------------------------------------------------------

    @staticmethod
    def pt_spectrum(rho: DensityMatrix) -> np.ndarray:
        """Eigenvalues of rho^T_A, descending"""
        return LinalgService.eigvals_hermitian(LinalgService.partial_transpose(rho))

    @staticmethod
    def negativity_witness(rho: DensityMatrix, tol: float = None) -> float:
        """Sum of |lambda| over the negative eigenvalues of rho^T_A"""
        tol = Config.EIGEN_ZERO_TOL if tol is None else tol
        values = MeasureService.pt_spectrum(rho)
        return float(-values[values < -tol].sum()) + 0.0

    @staticmethod
    def negativity_trace(rho: DensityMatrix, tol: float = None) -> float:
        """
        ||rho^T_A||_1 - tr(rho^T_A), taken over the eigenvalues with |lambda| >= tol.

        Eigenvalues below the zero threshold are dropped before summing, the
        same cut the witness convention makes.
        """
        tol = Config.EIGEN_ZERO_TOL if tol is None else tol
        values = MeasureService.pt_spectrum(rho)
        kept = values[np.abs(values) >= tol]
        return float(np.sum(np.abs(kept) - kept)) + 0.0

    @staticmethod
    def negativity(rho: DensityMatrix, convention: Convention, tol: float = None) -> float:
        if Convention(convention) is Convention.TRACE:
            return MeasureService.negativity_trace(rho, tol)
        return MeasureService.negativity_witness(rho, tol)

    @staticmethod
    def count_negative_eigs(rho: DensityMatrix, tol: float = None) -> int:
        tol = Config.EIGEN_ZERO_TOL if tol is None else tol
        return int(np.count_nonzero(MeasureService.pt_spectrum(rho) < -tol))

    @staticmethod
    def optimal_witness(rho: DensityMatrix, tol: float = None) -> ComplexMatrix:
        """
        W = P_-^T_A with P_- the projector onto the negative eigenspace of rho^T_A.

        0 <= W^T_A <= I and tr(W rho) equals minus the witness negativity.
        """
        tol = Config.EIGEN_ZERO_TOL if tol is None else tol
        spectrum = LinalgService.eig_hermitian(LinalgService.partial_transpose(rho))
        mask = spectrum.eigenvalues < -tol
        if not mask.any():
            raise NotNPT(
                f"State has positive partial transpose (min eigenvalue {spectrum.eigenvalues[-1]:.3e})"
            )
        negative = spectrum.eigenvectors[:, mask]
        projector = negative @ negative.conj().T
        return LinalgService.partial_transpose_operator(projector, rho.dims)

    # -----------------------------------------------------------------------
    # Hilbert-Schmidt discord
    # -----------------------------------------------------------------------

    @staticmethod
    def hs_residual(matrix: ComplexMatrix, unitary: np.ndarray, m: int, n: int,
                    purity: float = None) -> float:
        """
        ||X - Pi_V(X)||_2^2 for the measurement in the columns of V.

        Dephasing is an orthogonal projection in the Hilbert-Schmidt inner
        product, so the residual is tr(X^2) minus the weight of the kept blocks.
        """
        if purity is None:
            purity = float(np.sum(np.abs(matrix) ** 2))
        blocks = LinalgService.rotate_A(matrix, unitary, n).reshape(m, n, m, n)
        idx = np.arange(m)
        kept = float(np.sum(np.abs(blocks[idx, :, idx, :]) ** 2))
        return max(purity - kept, 0.0)

    @staticmethod
    def trace_residual(matrix: ComplexMatrix, unitary: np.ndarray, m: int, n: int) -> float:
        """||X - Pi_V(X)||_1, evaluated in the measured basis"""
        rotated = LinalgService.rotate_A(matrix, unitary, n)
        residual = rotated - LinalgService.block_diagonal_A(rotated, m, n)
        return LinalgService.schatten_norm(residual, 1)

    @staticmethod
    def make_route(route: Union[str, Route, 'DiscordRoute'], basis: MeasurementBasis = None,
                   **kwargs) -> 'DiscordRoute':
        """Factory for the evaluation routes"""
        if isinstance(route, DiscordRoute):
            return route
        try:
            route = Route(route)
        except ValueError:
            raise UnknownRoute(f"Unknown D2 route: {route!r}")
        if route is Route.CLOSED_FORM:
            return ClosedFormRoute()
        if route is Route.OPTIMIZER:
            return OptimizerRoute(**kwargs)
        return FixedBasisRoute(basis)

    @staticmethod
    def best_route(rho: DensityMatrix) -> 'DiscordRoute':
        """Closed form when available, the optimizer otherwise"""
        return ClosedFormRoute() if rho.m == 2 else OptimizerRoute()

    @staticmethod
    def gd2(rho: DensityMatrix, route: Union[str, Route, 'DiscordRoute'] = None,
            basis: MeasurementBasis = None, **kwargs) -> DiscordEstimate:
        """Unnormalized Hilbert-Schmidt geometric discord"""
        if route is None:
            return MeasureService.best_route(rho).estimate(rho)
        return MeasureService.make_route(route, basis, **kwargs).estimate(rho)

    @staticmethod
    def gd_normalized(value: float, m: int) -> float:
        """m/(m-1) D2, which makes the two-qubit maximum equal to one"""
        if m < 2:
            raise InvalidDim(f"Normalization needs m >= 2, got {m}")
        return m / (m - 1) * value

    # -----------------------------------------------------------------------
    # Trace-norm discord
    # -----------------------------------------------------------------------

    @staticmethod
    def gd1_upper_bounds(rho: DensityMatrix, optimize: Optional[bool] = None,
                         starts: int = None, seed: int = None) -> List[Tuple[str, float]]:
        """
        Upper bounds on D1 = min ||rho - xi||_1 over classical-quantum xi.

        Candidates are the maximally mixed state, the computational-basis
        dephasing and, when `optimize` is set (by default for total dimension up
        to Config.TRACE_NORM_OPTIMIZER_MAX_DIM), the best dephasing found by the
        basis optimizer. None of these is claimed to be the exact D1.
        """
        m, n = rho.dims
        if optimize is None:
            optimize = rho.dim <= Config.TRACE_NORM_OPTIMIZER_MAX_DIM

        bounds = [
            ('identity', LinalgService.schatten_norm(rho.matrix - np.eye(rho.dim) / rho.dim, 1)),
            ('dephased', LinalgService.schatten_norm(rho.matrix - LinalgService.dephase_A(rho).matrix, 1)),
        ]
        if optimize:
            optimizer = BasisOptimizer(
                lambda unitary: MeasureService.trace_residual(rho.matrix, unitary, m, n), m,
                line_search=BrentLineSearch(),
                starts=Config.TRACE_NORM_OPTIMIZER_STARTS if starts is None else starts,
                seed=seed
            )
            result = optimizer.minimize()
            bounds.append(('optimizer', result.value))
        else:
            logger.debug("Skipping trace-norm basis search for dimension %d", rho.dim)

        for label, bound in bounds:
            if bound > 2.0 + Config.VIOLATION_TOL:
                raise DiameterExceeded(f"Trace-distance bound {label} = {bound!r} exceeds 2")
        return bounds

    @staticmethod
    def best_gd1_bound(bounds: List[Tuple[str, float]]) -> Tuple[str, float]:
        return min(bounds, key=lambda item: item[1])


class DiscordRoute(ABC):
    """Abstract base class for the D2 evaluation routes"""

    route: Route

    @abstractmethod
    def estimate(self, rho: DensityMatrix) -> DiscordEstimate:
        pass


class FixedBasisRoute(DiscordRoute):
    """Upper bound from one given measurement, the computational one by default"""

    route = Route.FIXED_BASIS

    def __init__(self, basis: MeasurementBasis = None):
        self.basis = basis

    def estimate(self, rho: DensityMatrix) -> DiscordEstimate:
        basis = self.basis or MeasurementBasis.computational(rho.m)
        if basis.m != rho.m:
            raise ValidationError(f"Basis acts on dimension {basis.m}, subsystem A has {rho.m}")
        value = MeasureService.hs_residual(rho.matrix, basis.vectors, rho.m, rho.n)
        return DiscordEstimate(value=value, route=self.route, basis=basis)


class OptimizerRoute(DiscordRoute):
    """Minimum of the fixed-basis value over all measurement bases"""

    route = Route.OPTIMIZER

    def __init__(self, starts: int = None, max_sweeps: int = None, seed: int = None, workers: int = 1):
        self.starts = starts
        self.max_sweeps = max_sweeps
        self.seed = seed
        self.workers = workers

    def estimate(self, rho: DensityMatrix) -> DiscordEstimate:
        m, n = rho.dims
        matrix = rho.matrix
        purity = float(np.sum(np.abs(matrix) ** 2))
        optimizer = BasisOptimizer(
            lambda unitary: MeasureService.hs_residual(matrix, unitary, m, n, purity), m,
            starts=self.starts, max_sweeps=self.max_sweeps, seed=self.seed, workers=self.workers
        )
        result = optimizer.minimize()
        if not result.converged:
            logger.warning("Optimizer did not converge; %.6e is still an upper bound", result.value)
        return DiscordEstimate(value=result.value, route=self.route,
                               basis=MeasurementBasis(result.unitary), converged=result.converged)


class ClosedFormRoute(DiscordRoute):
    """Exact value for a qubit on A"""

    route = Route.CLOSED_FORM

    def estimate(self, rho: DensityMatrix) -> DiscordEstimate:
        if rho.m != 2:
            raise ClosedFormRequiresQubitA(f"Closed form needs m = 2, got {rho.m}x{rho.n}")
        return DiscordEstimate(value=BlochService.gd2_closed_form(rho), route=self.route)


class NotNPT(ValidationError):
    """State has no negative partial-transpose eigenvalue"""
    pass


class ClosedFormRequiresQubitA(ValidationError):
    """Closed-form discord requested for m != 2"""
    pass


class UnknownRoute(ValidationError):
    """Unrecognized D2 evaluation route"""
    pass


class DiameterExceeded(NumericalError):
    """A trace distance between states came out above 2"""
    pass
