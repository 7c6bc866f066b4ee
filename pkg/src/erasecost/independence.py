"""Weak independence of Y from X and the repeated-symbol optimality verdict.

Y is weakly independent of X when the conditional rows P_{Y|X}(.|x) are
linearly dependent.  That is exactly the condition under which a channel
can decorrelate Xhat from Y while keeping it correlated with X, so it
governs whether overwriting with a single repeated symbol is optimal at
zero leakage budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import AllMasslessError, DomainError
from .prob import JointSource
from .solver import ErasureInstance


@dataclass(frozen=True)
class WeakIndependenceReport:
    weakly_independent: bool
    row_rank: int
    singular_values: tuple
    tolerance: float
    #: x-symbols excluded because P_X(x) = 0; their conditional rows are
    #: undefined and cannot affect any achievable (Y, Xhat) joint
    massless_excluded: tuple


class RepeatedSymbolVerdict(Enum):
    OPTIMAL = "optimal"
    NOT_OPTIMAL_WEAKLY_INDEPENDENT = "not_optimal_weakly_independent"
    NOT_OPTIMAL_POSITIVE_EPS = "not_optimal_positive_eps"


def is_weakly_independent(src: JointSource, tol: float = 1e-9) -> WeakIndependenceReport:
    """Numerical-rank test of the conditional rows P_{Y|X}(.|x).

    Rank counts singular values above ``tol`` times the largest one
    (relative thresholding is scale-stable); the rows are linearly
    dependent, i.e. Y is weakly independent of X, iff the rank falls
    short of the number of positive-mass x-symbols.
    """
    if tol <= 0.0:
        raise DomainError(f"tol {tol!r} must be positive")
    rows, support = src.conditional_rows()
    if support.size == 0:
        raise AllMasslessError("joint source has no positive-mass x-symbol")
    sv = np.linalg.svd(rows, compute_uv=False)
    rank = int((sv > tol * sv[0]).sum())
    massless = tuple(int(x) for x in range(src.x_size) if x not in set(support.tolist()))
    return WeakIndependenceReport(
        weakly_independent=rank < rows.shape[0],
        row_rank=rank,
        singular_values=tuple(float(s) for s in sv),
        tolerance=float(tol),
        massless_excluded=massless,
    )


def repeated_symbol_verdict(inst: ErasureInstance, eps: float,
                            tol: float = 1e-9) -> RepeatedSymbolVerdict:
    """Is the repeated-symbol encoder guaranteed optimal at budget ``eps``?

    Optimal only when eps = 0 and Y is not weakly independent of X.  Any
    positive budget, or weak independence at zero budget, removes the
    guarantee: cheaper channels can exist and do in the standard
    counterexamples.
    """
    if eps < 0.0:
        raise DomainError(f"eps {eps!r} < 0")
    if eps > 0.0:
        return RepeatedSymbolVerdict.NOT_OPTIMAL_POSITIVE_EPS
    if is_weakly_independent(inst.source, tol).weakly_independent:
        return RepeatedSymbolVerdict.NOT_OPTIMAL_WEAKLY_INDEPENDENT
    return RepeatedSymbolVerdict.OPTIMAL
