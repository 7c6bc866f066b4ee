"""Per-letter cost matrices and expected overwrite costs.

A cost matrix assigns a finite non-negative price c(x, xhat) to replacing
source symbol x with output symbol xhat.  Sequence costs are arithmetic
means of per-letter costs, so every value lives in [0, c_max].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DomainError,
    IndexOutOfRangeError,
    LengthMismatchError,
)
from .prob import Channel, Distribution


@dataclass(frozen=True)
class CostMatrix:
    """Finite non-negative costs indexed (x, xhat)."""

    c: np.ndarray

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.c, dtype=np.float64))
        if arr.ndim != 2:
            raise DimensionMismatchError("CostMatrix: c must be 2-D")
        if arr.size == 0:
            raise DimensionMismatchError("CostMatrix: empty")
        if not np.all(np.isfinite(arr)):
            raise DomainError("CostMatrix: entries must be finite")
        if np.any(arr < 0.0):
            raise DomainError("CostMatrix: entries must be non-negative")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)

    @property
    def x_size(self) -> int:
        return self.c.shape[0]

    @property
    def xhat_size(self) -> int:
        return self.c.shape[1]

    @property
    def c_max(self) -> float:
        return float(self.c.max())


def hamming_cost(size: int) -> CostMatrix:
    """0 on the diagonal, 1 elsewhere: counts changed symbols."""
    if size < 1:
        raise DomainError(f"hamming_cost: size {size} < 1")
    return CostMatrix(1.0 - np.eye(size))


def sequence_cost(x_seq, xhat_seq, c: CostMatrix) -> float:
    """Mean per-letter cost of overwriting ``x_seq`` with ``xhat_seq``."""
    xs = np.asarray(x_seq, dtype=np.intp)
    hs = np.asarray(xhat_seq, dtype=np.intp)
    if xs.shape != hs.shape or xs.ndim != 1 or xs.size == 0:
        raise LengthMismatchError(
            f"sequence_cost: lengths {xs.shape} vs {hs.shape}"
        )
    if np.any(xs < 0) or np.any(xs >= c.x_size):
        raise IndexOutOfRangeError("sequence_cost: x index outside alphabet")
    if np.any(hs < 0) or np.any(hs >= c.xhat_size):
        raise IndexOutOfRangeError("sequence_cost: xhat index outside alphabet")
    return float(c.c[xs, hs].mean())


def expected_cost(p_x: Distribution, w: Channel, c: CostMatrix) -> float:
    """E[c(X, Xhat)] = sum_{x,xhat} P(x) W(xhat|x) c(x,xhat)."""
    if p_x.alphabet_size != w.in_size or w.in_size != c.x_size or w.out_size != c.xhat_size:
        raise DimensionMismatchError(
            f"expected_cost: sizes p_x={p_x.alphabet_size}, "
            f"w={w.in_size}x{w.out_size}, c={c.x_size}x{c.xhat_size}"
        )
    return float(np.einsum("x,xh,xh->", p_x.probs, w.w, c.c))


def gamma_min(p_x: Distribution, c: CostMatrix) -> tuple[float, int]:
    """Cheapest single overwrite symbol and its expected cost.

    Returns (min over xhat of E[c(X, xhat)], argmin), ties broken by the
    smallest index so builds are reproducible.
    """
    if p_x.alphabet_size != c.x_size:
        raise DimensionMismatchError(
            f"gamma_min: p_x size {p_x.alphabet_size} != cost x-size {c.x_size}"
        )
    col_costs = p_x.probs @ c.c
    symbol = int(np.argmin(col_costs))
    return float(col_costs[symbol]), symbol
