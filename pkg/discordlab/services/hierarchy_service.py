"""
Evaluators for the contested discord/entanglement relations.

Every report carries lhs - rhs as its margin; a margin below
-Config.VIOLATION_TOL is a violation.
"""
import logging

import numpy as np

from discordlab.config import Config
from discordlab.models.reports import (
    AncillaReport, Convention, HierarchyReport, Inequality, Route, Status
)
from discordlab.models.state import DensityMatrix
from discordlab.services.linalg_service import LinalgService
from discordlab.services.measure_service import MeasureService
from discordlab.services.state_service import InvalidDim

logger = logging.getLogger(__name__)


class HierarchyService:
    """Margin and status for each discord/negativity relation"""

    @staticmethod
    def _status(margin: float) -> Status:
        return Status.VIOLATED if margin < -Config.VIOLATION_TOL else Status.SATISFIED

    @staticmethod
    def check_eq3(rho: DensityMatrix, convention: Convention = Convention.TRACE,
                  normalized: bool = False) -> HierarchyReport:
        """
        D2 >= N^2 / (m-1)^2.

        With `normalized` the lhs is m/(m-1) D2, the form in which the relation
        was first conjectured.
        """
        convention = Convention(convention)
        m = rho.m
        if m < 2:
            raise InvalidDim(f"Relation needs m >= 2 on subsystem A, got {m}x{rho.n}")
        estimate = MeasureService.gd2(rho)
        neg = MeasureService.negativity(rho, convention)
        lhs = MeasureService.gd_normalized(estimate.value, m) if normalized else estimate.value
        rhs = neg ** 2 / (m - 1) ** 2
        margin = lhs - rhs
        return HierarchyReport(
            inequality=Inequality.EQ3_NORMALIZED, convention=convention,
            lhs=lhs, rhs=rhs, margin=margin, status=HierarchyService._status(margin),
            details={
                'm': m, 'dims': list(rho.dims), 'd2': estimate.value,
                'd2_route': estimate.route.value, 'negativity': neg,
                'lhs_normalized': normalized
            }
        )

    @staticmethod
    def check_eq4(rho: DensityMatrix) -> HierarchyReport:
        """m/(m-1) D2 >= [sum of negative PT eigenvalues]^2 / (m-1)^2"""
        m = rho.m
        estimate = MeasureService.gd2(rho)
        neg = MeasureService.negativity_witness(rho)
        lhs = MeasureService.gd_normalized(estimate.value, m)
        rhs = neg ** 2 / (m - 1) ** 2
        margin = lhs - rhs
        return HierarchyReport(
            inequality=Inequality.EQ4_WEAK, convention=Convention.WITNESS,
            lhs=lhs, rhs=rhs, margin=margin, status=HierarchyService._status(margin),
            details={
                'm': m, 'dims': list(rho.dims), 'd2': estimate.value,
                'd2_route': estimate.route.value, 'negativity': neg
            }
        )

    @staticmethod
    def check_d1(rho: DensityMatrix, convention: Convention = Convention.TRACE,
                 optimize: bool = None) -> HierarchyReport:
        """
        D1 >= N, tested with upper bounds on D1.

        A bound below N refutes the relation. A bound at or above N says nothing
        about D1 itself, so that case is inconclusive rather than satisfied.
        """
        convention = Convention(convention)
        bounds = MeasureService.gd1_upper_bounds(rho, optimize=optimize)
        label, bound = MeasureService.best_gd1_bound(bounds)
        neg = MeasureService.negativity(rho, convention)
        margin = bound - neg
        status = Status.VIOLATED if margin < -Config.VIOLATION_TOL else Status.INCONCLUSIVE
        return HierarchyReport(
            inequality=Inequality.D1_VS_N, convention=convention,
            lhs=bound, rhs=neg, margin=margin, status=status,
            details={
                'm': rho.m, 'dims': list(rho.dims), 'negativity': neg,
                'best_bound': label, 'bounds': dict(bounds)
            }
        )

    @staticmethod
    def check_erratum(rho: DensityMatrix, convention: Convention = Convention.TRACE) -> HierarchyReport:
        """
        Strict relation D2 > N^2 / (d-1) with d = m n.

        PPT states meet it with equality and are reported as satisfied; an NPT
        state must clear the bound by more than the violation tolerance.
        """
        convention = Convention(convention)
        d = rho.dim
        if d < 2:
            raise InvalidDim(f"Relation needs total dimension d >= 2, got {d}")
        estimate = MeasureService.gd2(rho)
        neg = MeasureService.negativity(rho, convention)
        lhs = estimate.value
        rhs = neg ** 2 / (d - 1)
        margin = lhs - rhs
        if neg == 0.0:
            status = HierarchyService._status(margin)
        else:
            status = Status.SATISFIED if margin > Config.VIOLATION_TOL else Status.VIOLATED
        return HierarchyReport(
            inequality=Inequality.ERRATUM_STRICT, convention=convention,
            lhs=lhs, rhs=rhs, margin=margin, status=status,
            details={
                'd': d, 'dims': list(rho.dims), 'd2': estimate.value,
                'd2_route': estimate.route.value, 'negativity': neg,
                'equality': neg == 0.0
            }
        )

    @staticmethod
    def ancilla_demo(rho: DensityMatrix, k: int = 2, ancilla: np.ndarray = None,
                     route: Route = Route.OPTIMIZER) -> AncillaReport:
        """
        Append a factorized ancilla sigma to B and compare the measures.

        D2 scales by tr(sigma^2) while both negativities stay put, so N/d falls
        as d grows.
        """
        if ancilla is None:
            if k < 2:
                raise InvalidDim(f"Ancilla dimension must be >= 2, got {k}")
            ancilla = np.eye(k) / k
        ancilla_state = DensityMatrix.from_array(ancilla, (1, np.asarray(ancilla).shape[0]))
        k = ancilla_state.n
        extended = DensityMatrix.from_array(
            LinalgService.tensor(rho.matrix, ancilla_state.matrix), (rho.m, rho.n * k)
        )
        purity = float(np.sum(np.abs(ancilla_state.matrix) ** 2))

        before = MeasureService.gd2(rho, route).value
        after = MeasureService.gd2(extended, route).value
        logger.info("Ancilla of dimension %d: D2 %.6e -> %.6e (expected ratio %.6f)", k, before, after, purity)
        return AncillaReport(
            dims_before=rho.dims, dims_after=extended.dims, ancilla_purity=purity,
            d2_before=before, d2_after=after,
            neg_witness_before=MeasureService.negativity_witness(rho),
            neg_witness_after=MeasureService.negativity_witness(extended),
            neg_trace_before=MeasureService.negativity_trace(rho),
            neg_trace_after=MeasureService.negativity_trace(extended)
        )
