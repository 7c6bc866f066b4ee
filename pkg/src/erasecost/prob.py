"""Exact finite-alphabet probability primitives.

Distributions, joint sources and channels over index alphabets
{0, ..., k-1}, plus entropy and mutual information in nats.  All values
are immutable after construction and every operation is a pure function,
so everything here is safe to share across threads.

Construction normalizes once (clamping entries above -1e-12 to zero) and
is exact thereafter; nothing downstream renormalizes silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    DomainError,
    InternalError,
    NegativeEntryError,
    NonPositiveMassError,
)

#: Entries below zero by more than this are rejected; sums must match 1
#: within this tolerance after normalization.
MASS_TOL = 1e-12

_LOG_FLOOR = 1e-300


def _clean_mass(raw: np.ndarray, what: str) -> np.ndarray:
    """Clamp tiny negatives to zero and normalize total mass to 1."""
    arr = np.array(raw, dtype=np.float64)
    if arr.size == 0:
        raise NonPositiveMassError(f"{what}: empty")
    if np.any(arr < -MASS_TOL):
        raise NegativeEntryError(
            f"{what}: entry {arr.min():g} below -{MASS_TOL:g}"
        )
    arr = np.maximum(arr, 0.0)
    total = float(arr.sum())
    if total <= 0.0:
        raise NonPositiveMassError(f"{what}: total mass {total:g} <= 0")
    arr /= total
    return arr


@dataclass(frozen=True)
class Distribution:
    """Probability vector over a finite alphabet {0, ..., k-1}."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _clean_mass(np.atleast_1d(self.probs), "Distribution")
        if arr.ndim != 1:
            raise DimensionMismatchError("Distribution: probs must be 1-D")
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def alphabet_size(self) -> int:
        return self.probs.shape[0]


@dataclass(frozen=True)
class JointSource:
    """Joint distribution P_XY on a product alphabet, indexed (x, y)."""

    p_xy: np.ndarray

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.p_xy, dtype=np.float64))
        if arr.ndim != 2:
            raise DimensionMismatchError("JointSource: p_xy must be 2-D")
        arr = _clean_mass(arr, "JointSource")
        arr.setflags(write=False)
        object.__setattr__(self, "p_xy", arr)

    @property
    def x_size(self) -> int:
        return self.p_xy.shape[0]

    @property
    def y_size(self) -> int:
        return self.p_xy.shape[1]

    def marginal_x(self) -> Distribution:
        return Distribution(self.p_xy.sum(axis=1))

    def marginal_y(self) -> Distribution:
        return Distribution(self.p_xy.sum(axis=0))

    def conditional_rows(self) -> tuple[np.ndarray, np.ndarray]:
        """Rows P_{Y|X}(.|x) for the x with positive mass.

        Returns (rows, support) where ``rows[i]`` conditions on
        ``x = support[i]``.  Massless x-symbols have no conditional row.
        """
        px = self.p_xy.sum(axis=1)
        support = np.flatnonzero(px > 0.0)
        rows = self.p_xy[support] / px[support, None]
        return rows, support


@dataclass(frozen=True)
class Channel:
    """Row-stochastic matrix W(xhat | x), indexed (x, xhat)."""

    w: np.ndarray

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.w, dtype=np.float64))
        if arr.ndim != 2:
            raise DimensionMismatchError("Channel: w must be 2-D")
        rows = [_clean_mass(row, f"Channel row {i}") for i, row in enumerate(arr)]
        arr = np.vstack(rows)
        arr.setflags(write=False)
        object.__setattr__(self, "w", arr)

    @property
    def in_size(self) -> int:
        return self.w.shape[0]

    @property
    def out_size(self) -> int:
        return self.w.shape[1]


def make_distribution(raw) -> Distribution:
    """Validate, clamp and normalize a raw vector into a Distribution."""
    return Distribution(np.asarray(raw, dtype=np.float64))


def make_joint(raw) -> JointSource:
    """Validate, clamp and normalize a raw matrix into a JointSource."""
    return JointSource(np.asarray(raw, dtype=np.float64))


def make_channel(raw) -> Channel:
    """Validate and row-normalize a raw matrix into a Channel."""
    return Channel(np.asarray(raw, dtype=np.float64))


def joint_from_marginal_and_rows(p_x, p_y_given_x) -> JointSource:
    """Build P_XY = P_X(x) * P_{Y|X}(y|x) from a marginal and conditional rows."""
    px = make_distribution(p_x).probs
    rows = np.atleast_2d(np.asarray(p_y_given_x, dtype=np.float64))
    if rows.shape[0] != px.shape[0]:
        raise DimensionMismatchError(
            f"marginal has {px.shape[0]} symbols, conditional has {rows.shape[0]} rows"
        )
    return JointSource(px[:, None] * rows)


def identity_channel(size: int) -> Channel:
    return Channel(np.eye(size))


def constant_channel(in_size: int, out_size: int, symbol: int) -> Channel:
    """Channel that maps every input to the fixed output ``symbol``."""
    if not 0 <= symbol < out_size:
        raise DomainError(f"symbol {symbol} outside output alphabet of size {out_size}")
    w = np.zeros((in_size, out_size))
    w[:, symbol] = 1.0
    return Channel(w)


def push_forward(p_x: Distribution, w: Channel) -> Distribution:
    """Output distribution P(xhat) = sum_x P(x) W(xhat|x)."""
    if p_x.alphabet_size != w.in_size:
        raise DimensionMismatchError(
            f"distribution size {p_x.alphabet_size} != channel input size {w.in_size}"
        )
    return Distribution(p_x.probs @ w.w)


def induced_joint_y_xhat(src: JointSource, w: Channel) -> JointSource:
    """Joint of (Y, Xhat) when Xhat is produced from X through ``w``.

    P(y, xhat) = sum_x P_XY(x, y) W(xhat|x); linear in the channel.
    """
    if src.x_size != w.in_size:
        raise DimensionMismatchError(
            f"source x-size {src.x_size} != channel input size {w.in_size}"
        )
    return JointSource(src.p_xy.T @ w.w)


def entropy(p: Distribution) -> float:
    """Shannon entropy in nats, with 0 log 0 = 0."""
    q = p.probs[p.probs > 0.0]
    return max(float(-(q * np.log(q)).sum()), 0.0)


def mutual_information(j: JointSource) -> float:
    """Mutual information of a joint source in nats.

    Terms with zero joint mass contribute nothing.  A positive joint cell
    above a zero-mass marginal is impossible for a valid joint and raises
    InternalError.
    """
    p = j.p_xy
    pa = p.sum(axis=1)
    pb = p.sum(axis=0)
    mask = p > 0.0
    denom = np.outer(pa, pb)
    if np.any(mask & (denom <= 0.0)):
        raise InternalError("positive joint cell with zero-mass marginal")
    vals = p[mask] * (np.log(p[mask]) - np.log(denom[mask]))
    return max(float(vals.sum()), 0.0)


def binary_entropy(p: float) -> float:
    """h(p) = -p log p - (1-p) log(1-p) in nats, for p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary_entropy: p={p!r} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log(1.0 - p)


def binary_entropy_inverse(v: float) -> float:
    """Unique q in [0, 1/2] with h(q) = v, by bisection.

    The bracket is narrowed below 1e-15, so the round trip
    h(binary_entropy_inverse(v)) matches v within 1e-10.
    """
    log2 = math.log(2.0)
    if not 0.0 <= v <= log2:
        raise DomainError(f"binary_entropy_inverse: v={v!r} outside [0, log 2]")
    if v == 0.0:
        return 0.0
    if v >= log2:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < v:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
