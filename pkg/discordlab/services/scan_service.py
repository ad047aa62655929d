"""
Parameter scans: the Werner z-window and the negative-eigenvalue-count
search over random states.

Work items are independent. With workers > 1 they run on a thread pool and
results are put back in input order. Random sample i of dimension pair p is
drawn from SeedSequence(seed, spawn_key=(p, i)), so any sample can be
regenerated from the root seed and its two indices.
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Sequence, Tuple, TypeVar

import numpy as np

from discordlab.config import Config
from discordlab.errors import ValidationError
from discordlab.models.reports import (
    Counterexample, ErratumPairResult, ErratumScanReport, ScanRow
)
from discordlab.models.state import DensityMatrix, DimensionMismatch, WernerParams
from discordlab.services.linalg_service import LinalgService
from discordlab.services.measure_service import MeasureService
from discordlab.services.state_service import StateService

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

# every PRODUCT_EVERY-th random sample is a pure product state
PRODUCT_EVERY = 10


class ScanService:
    """Werner z-scans and the negative-eigenvalue-count search"""

    @staticmethod
    def _ordered_map(func: Callable[[T], R], items: Sequence[T], workers: int = None) -> List[R]:
        workers = Config.SCAN_WORKERS if workers is None else workers
        if workers > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(func, items))
        return [func(item) for item in items]

    @staticmethod
    def z_grid(z_from: float, z_to: float, steps: int) -> List[float]:
        if steps < 1:
            raise ValidationError(f"Scan needs at least one step, got {steps}")
        if steps == 1:
            return [float(z_from)]
        return [float(z) for z in np.linspace(z_from, z_to, steps)]

    @staticmethod
    def scan_row(rho: DensityMatrix, z: float) -> ScanRow:
        m = rho.m
        d2 = MeasureService.gd2(rho).value
        d2_normalized = MeasureService.gd_normalized(d2, m)
        neg_witness = MeasureService.negativity_witness(rho)
        eq4_rhs = neg_witness ** 2 / (m - 1) ** 2
        return ScanRow(
            z=z, bipartition=rho.dims, d2=d2, d2_normalized=d2_normalized,
            neg_witness=neg_witness, neg_trace=MeasureService.negativity_trace(rho),
            eq4_lhs=d2_normalized, eq4_rhs=eq4_rhs,
            violated=d2_normalized - eq4_rhs < -Config.VIOLATION_TOL
        )

    @staticmethod
    def werner_scan(m: int, zs: Iterable[float], bipartition: Tuple[int, int],
                    workers: int = None) -> List[ScanRow]:
        """One row per z, in grid order, for Werner(m, z) read as bipartition"""
        m_part, n_part = bipartition
        if m_part * n_part != m * m:
            raise DimensionMismatch(
                f"Bipartition {m_part}x{n_part} does not split a {m}x{m} Werner state"
            )

        def evaluate(z: float) -> ScanRow:
            rho = LinalgService.repartition(StateService.werner(WernerParams(m=m, z=z)), (m_part, n_part))
            return ScanService.scan_row(rho, z)

        rows = ScanService._ordered_map(evaluate, list(zs), workers)
        logger.info("Werner scan m=%d as %dx%d: %d rows, %d violating",
                    m, m_part, n_part, len(rows), sum(r.violated for r in rows))
        return rows

    @staticmethod
    def _sample(dims: Tuple[int, int], seed: int, pair_index: int,
                index: int) -> Tuple[DensityMatrix, int]:
        """Random state for one work item, with its rank (0 marks a product state)"""
        m, n = dims
        d = m * n
        seq = np.random.SeedSequence(seed, spawn_key=(pair_index, index))
        if index % PRODUCT_EVERY == PRODUCT_EVERY - 1:
            return StateService.random_pure_product(dims, seq), 0
        rank = 1 + index % d
        return StateService.random_state(dims, rank, seq), rank

    @staticmethod
    def _reference_states(dims: Tuple[int, int]) -> List[DensityMatrix]:
        m, n = dims
        states = [StateService.random_pure_product(dims, np.random.SeedSequence(0))]
        if m == n:
            states.append(StateService.max_entangled(m))
        return states

    @staticmethod
    def erratum_scan(dims: Sequence[Tuple[int, int]], samples: int, seed: int = None,
                     workers: int = None, tol: float = None) -> ErratumScanReport:
        """
        Count negative partial-transpose eigenvalues over random states and check
        that n_- = d - 1 (d = m n) never occurs.

        Ranks cycle through 1..d and every tenth sample is a pure product state.
        A sample with n_- = d - 1 is stored verbatim in the report.
        """
        if not dims:
            raise ValidationError("Need at least one dimension pair to scan")
        if samples < 1:
            raise ValidationError(f"Need at least one sample per dimension pair, got {samples}")
        seed = Config.DEFAULT_SEED if seed is None else seed
        tol = Config.EIGEN_ZERO_TOL if tol is None else tol

        pairs = []
        for pair_index, (m, n) in enumerate(dims):
            d = m * n

            def evaluate(index: int, pair=(m, n), pair_index=pair_index):
                rho, rank = ScanService._sample(pair, seed, pair_index, index)
                spectrum = LinalgService.eigvals_hermitian(LinalgService.partial_transpose(rho))
                return rank, int(np.count_nonzero(spectrum < -tol)), rho, spectrum

            histogram, ranks = Counter(), Counter()
            counterexamples = []
            results = ScanService._ordered_map(evaluate, range(samples), workers)
            for index, (rank, count, rho, spectrum) in enumerate(results):
                histogram[count] += 1
                ranks[rank] += 1
                if count == d - 1:
                    logger.error("n_- = d - 1 found for %dx%d at sample %d", m, n, index)
                    counterexamples.append(Counterexample(
                        dims=(m, n), seed_key=(seed, pair_index, index),
                        matrix=rho.matrix, pt_spectrum=spectrum
                    ))
            for state in ScanService._reference_states((m, n)):
                spectrum = LinalgService.eigvals_hermitian(LinalgService.partial_transpose(state))
                count = int(np.count_nonzero(spectrum < -tol))
                histogram[count] += 1
                if count == d - 1:
                    counterexamples.append(Counterexample(
                        dims=(m, n), seed_key=(), matrix=state.matrix, pt_spectrum=spectrum
                    ))

            result = ErratumPairResult(
                dims=(m, n), samples=samples, max_negative=max(histogram),
                histogram=dict(histogram), rank_counts=dict(ranks),
                counterexamples=counterexamples
            )
            logger.info("Erratum scan %dx%d: max n_- = %d of d - 1 = %d", m, n, result.max_negative, d - 1)
            pairs.append(result)
        return ErratumScanReport(seed=seed, pairs=pairs)
