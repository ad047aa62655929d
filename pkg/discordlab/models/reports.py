from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from discordlab.models.state import MeasurementBasis


class Route(str, Enum):
    CLOSED_FORM = 'closed_form'
    OPTIMIZER = 'optimizer'
    FIXED_BASIS = 'fixed_basis'


class Convention(str, Enum):
    WITNESS = 'witness'  # sum of |negative eigenvalues| of rho^T_A
    TRACE = 'trace'      # ||rho^T_A||_1 - 1, twice the witness value


class Inequality(str, Enum):
    EQ3_NORMALIZED = 'eq3_normalized'
    EQ4_WEAK = 'eq4_weak'
    D1_VS_N = 'd1_vs_N'
    ERRATUM_STRICT = 'erratum_strict'


class Status(str, Enum):
    SATISFIED = 'satisfied'
    VIOLATED = 'violated'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class BlochForm:
    """
    Coherence-vector form of a 2 x n state:

        rho = (I + x.sigma (x) I + I (x) y.beta + sum T_ij sigma_i (x) beta_j) / (2n)
    """
    x: np.ndarray
    y: np.ndarray
    T: np.ndarray
    n: int

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'x': self.x.tolist(),
            'y': self.y.tolist(),
            'T': self.T.tolist()
        }


@dataclass(frozen=True)
class DiscordEstimate:
    value: float
    route: Route
    basis: Optional[MeasurementBasis] = None
    converged: bool = True

    def to_dict(self) -> Dict:
        return {
            'value': self.value,
            'route': self.route.value,
            'converged': self.converged,
            'basis': self.basis.to_dict() if self.basis is not None else None
        }


@dataclass(frozen=True)
class HierarchyReport:
    inequality: Inequality
    convention: Convention
    lhs: float
    rhs: float
    margin: float
    status: Status
    details: Dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    def to_dict(self) -> Dict:
        return {
            'inequality': self.inequality.value,
            'convention': self.convention.value,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margin': self.margin,
            'violated': self.violated,
            'status': self.status.value,
            'details': self.details
        }


@dataclass(frozen=True)
class ScanRow:
    z: float
    bipartition: Tuple[int, int]
    d2: float
    d2_normalized: float
    neg_witness: float
    neg_trace: float
    eq4_lhs: float
    eq4_rhs: float
    violated: bool

    CSV_HEADER = ('z', 'm_part', 'n_part', 'd2', 'd2_normalized', 'neg_witness',
                  'neg_trace', 'eq4_lhs', 'eq4_rhs', 'violated')

    def to_row(self) -> Tuple:
        return (self.z, self.bipartition[0], self.bipartition[1], self.d2,
                self.d2_normalized, self.neg_witness, self.neg_trace,
                self.eq4_lhs, self.eq4_rhs, self.violated)

    def to_dict(self) -> Dict:
        return dict(zip(self.CSV_HEADER, self.to_row()))


@dataclass(frozen=True)
class Counterexample:
    """A sample with n_- = d - 1, kept verbatim"""
    dims: Tuple[int, int]
    seed_key: Tuple[int, ...]
    matrix: np.ndarray = field(repr=False)
    pt_spectrum: np.ndarray = field(repr=False)

    def to_dict(self) -> Dict:
        return {
            'dims': list(self.dims),
            'seed_key': list(self.seed_key),
            'matrix': [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
            'pt_spectrum': self.pt_spectrum.tolist()
        }


@dataclass(frozen=True)
class ErratumPairResult:
    dims: Tuple[int, int]
    samples: int
    max_negative: int
    histogram: Dict[int, int]
    rank_counts: Dict[int, int]
    counterexamples: List[Counterexample] = field(default_factory=list)

    @property
    def d(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> Dict:
        return {
            'dims': list(self.dims),
            'd': self.d,
            'samples': self.samples,
            'max_negative': self.max_negative,
            'holds': self.holds,
            'histogram': {str(k): v for k, v in sorted(self.histogram.items())},
            'rank_counts': {str(k): v for k, v in sorted(self.rank_counts.items())},
            'counterexamples': [c.to_dict() for c in self.counterexamples]
        }


@dataclass(frozen=True)
class ErratumScanReport:
    seed: int
    pairs: List[ErratumPairResult]

    @property
    def holds(self) -> bool:
        return all(p.holds for p in self.pairs)

    def to_dict(self) -> Dict:
        return {
            'seed': self.seed,
            'holds': self.holds,
            'pairs': [p.to_dict() for p in self.pairs]
        }


@dataclass(frozen=True)
class AncillaReport:
    dims_before: Tuple[int, int]
    dims_after: Tuple[int, int]
    ancilla_purity: float
    d2_before: float
    d2_after: float
    neg_witness_before: float
    neg_witness_after: float
    neg_trace_before: float
    neg_trace_after: float

    @property
    def d2_ratio(self) -> Optional[float]:
        if self.d2_before == 0.0:
            return None
        return self.d2_after / self.d2_before

    @property
    def n_over_d_before(self) -> float:
        return self.neg_trace_before / (self.dims_before[0] * self.dims_before[1])

    @property
    def n_over_d_after(self) -> float:
        return self.neg_trace_after / (self.dims_after[0] * self.dims_after[1])

    def to_dict(self) -> Dict:
        return {
            'dims_before': list(self.dims_before),
            'dims_after': list(self.dims_after),
            'ancilla_purity': self.ancilla_purity,
            'd2_before': self.d2_before,
            'd2_after': self.d2_after,
            'd2_ratio': self.d2_ratio,
            'expected_ratio': self.ancilla_purity,
            'neg_witness_before': self.neg_witness_before,
            'neg_witness_after': self.neg_witness_after,
            'neg_trace_before': self.neg_trace_before,
            'neg_trace_after': self.neg_trace_after,
            'n_over_d_before': self.n_over_d_before,
            'n_over_d_after': self.n_over_d_after,
            'n_witness_over_d_before': self.neg_witness_before / (self.dims_before[0] * self.dims_before[1]),
            'n_witness_over_d_after': self.neg_witness_after / (self.dims_after[0] * self.dims_after[1])
        }
