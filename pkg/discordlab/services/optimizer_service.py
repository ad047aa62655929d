"""
Minimization of a basis-dependent objective over rank-1 projective
measurements on subsystem A.

A basis is the set of columns of an m x m unitary V. The search is a
multi-start coordinate descent: each coordinate is a Givens rotation mixing
two basis vectors (a real rotation and a complex one per pair), optimized by
a one-dimensional line search.
"""
import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from discordlab.config import Config
from discordlab.services.state_service import StateService

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]


def givens(unitary: np.ndarray, k: int, l: int, theta: float, kind: str) -> np.ndarray:
    """Mix columns k and l of `unitary` by angle theta"""
    c, s = np.cos(theta), np.sin(theta)
    vk, vl = unitary[:, k], unitary[:, l]
    rotated = unitary.copy()
    if kind == 'real':
        rotated[:, k] = c * vk + s * vl
        rotated[:, l] = -s * vk + c * vl
    else:
        rotated[:, k] = c * vk + 1j * s * vl
        rotated[:, l] = 1j * s * vk + c * vl
    return rotated


class LineSearch(ABC):
    """Strategy for minimizing the objective along one Givens coordinate"""

    @abstractmethod
    def search(self, along: Callable[[float], float], current: float) -> float:
        """
        Return the angle to move to.

        Args:
            along: objective as a function of the rotation angle
            current: objective value at angle 0
        """
        pass


class TrigonometricLineSearch(LineSearch):
    """
    Exact line search for objectives quadratic in the dephased blocks.

    Along a Givens rotation the Hilbert-Schmidt residual is a trigonometric
    polynomial in t = 2 theta with harmonics 0, 1, 2, so five samples fix it
    and its minimum is found on a grid and polished by Newton steps.
    """

    SAMPLES = 5
    GRID = 720
    NEWTON_STEPS = 8

    def search(self, along: Callable[[float], float], current: float) -> float:
        thetas = np.arange(self.SAMPLES) * np.pi / self.SAMPLES
        samples = np.array([current] + [along(t) for t in thetas[1:]])
        coeffs = np.fft.rfft(samples) / self.SAMPLES
        a0 = coeffs[0].real
        a = 2 * coeffs[1:3].real
        b = -2 * coeffs[1:3].imag

        def value(t):
            return a0 + a[0] * np.cos(t) + b[0] * np.sin(t) + a[1] * np.cos(2 * t) + b[1] * np.sin(2 * t)

        grid = np.linspace(0.0, 2 * np.pi, self.GRID, endpoint=False)
        t = grid[np.argmin(value(grid))]
        for _ in range(self.NEWTON_STEPS):
            d1 = -a[0] * np.sin(t) + b[0] * np.cos(t) - 2 * a[1] * np.sin(2 * t) + 2 * b[1] * np.cos(2 * t)
            d2 = -a[0] * np.cos(t) - b[0] * np.sin(t) - 4 * a[1] * np.cos(2 * t) - 4 * b[1] * np.sin(2 * t)
            if d2 <= 0:
                break
            step = t - d1 / d2
            if value(step) > value(t):
                break
            t = step
        return float(t / 2)


class BrentLineSearch(LineSearch):
    """Bounded scalar search for objectives without a closed angular form"""

    # rotating by pi/2 permutes the two vectors, so one period suffices
    BOUNDS = (-np.pi / 4, np.pi / 4)

    def search(self, along: Callable[[float], float], current: float) -> float:
        result = minimize_scalar(along, bounds=self.BOUNDS, method='bounded',
                                 options={'xatol': 1e-10})
        if result.fun < current:
            return float(result.x)
        return 0.0


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    unitary: np.ndarray
    converged: bool
    start_index: int
    sweeps: int


class BasisOptimizer:
    """Multi-start Givens coordinate descent over measurement bases"""

    KINDS = ('real', 'imag')

    def __init__(self, objective: Objective, m: int, line_search: LineSearch = None,
                 starts: int = None, max_sweeps: int = None, tol: float = None,
                 seed: int = None, workers: int = 1):
        """
        Args:
            objective: maps a unitary (basis vectors as columns) to a real value
            m: dimension of the measured subsystem
            line_search: coordinate strategy, trigonometric by default
            starts: number of starting bases; start 0 is the computational basis
            max_sweeps: sweep budget per start
            tol: convergence threshold on the improvement over one full sweep
            seed: root seed for the Haar-random starts
            workers: threads used to run starts concurrently
        """
        self.objective = objective
        self.m = m
        self.line_search = line_search or TrigonometricLineSearch()
        self.starts = max(1, Config.OPTIMIZER_STARTS if starts is None else starts)
        self.max_sweeps = Config.OPTIMIZER_MAX_SWEEPS if max_sweeps is None else max_sweeps
        self.tol = Config.OPTIMIZER_TOL if tol is None else tol
        self.seed = Config.DEFAULT_SEED if seed is None else seed
        self.workers = max(1, workers)
        self.coordinates: List[Tuple[int, int, str]] = [
            (k, l, kind) for k, l in combinations(range(m), 2) for kind in self.KINDS
        ]

    def start_unitary(self, index: int) -> np.ndarray:
        if index == 0 or self.m < 2:
            return np.eye(self.m, dtype=np.complex128)
        return StateService.haar_unitary(self.m, np.random.SeedSequence(self.seed, spawn_key=(index,)))

    def refine(self, index: int) -> OptimizationResult:
        unitary = self.start_unitary(index)
        value = self.objective(unitary)
        converged = not self.coordinates
        sweeps = 0
        while not converged and sweeps < self.max_sweeps:
            sweeps += 1
            sweep_start = value
            for k, l, kind in self.coordinates:
                def along(theta, k=k, l=l, kind=kind, base=unitary):
                    return self.objective(givens(base, k, l, theta, kind))

                theta = self.line_search.search(along, value)
                if theta == 0.0:
                    continue
                candidate = givens(unitary, k, l, theta, kind)
                candidate_value = self.objective(candidate)
                if candidate_value < value:
                    unitary, value = candidate, candidate_value
            # keep the columns orthonormal against accumulated rounding
            unitary, _ = np.linalg.qr(unitary)
            value = self.objective(unitary)
            if sweep_start - value < self.tol:
                converged = True
        if not converged:
            logger.warning("Start %d did not converge after %d sweeps (value %.3e)", index, sweeps, value)
        return OptimizationResult(value=value, unitary=unitary, converged=converged,
                                  start_index=index, sweeps=sweeps)

    def minimize(self) -> OptimizationResult:
        indices = range(self.starts)
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(self.refine, indices))
        else:
            results = [self.refine(i) for i in indices]

        # ties go to the lowest start index so the reduction is deterministic
        best = min(results, key=lambda r: (r.value, r.start_index))
        logger.debug("Best basis from start %d after %d sweeps: %.12e",
                     best.start_index, best.sweeps, best.value)
        return best
