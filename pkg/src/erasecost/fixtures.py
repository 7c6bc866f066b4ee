"""Reference instances with known exact values, shared by tests and the CLI."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cost import CostMatrix, hamming_cost
from .prob import Channel, JointSource
from .solver import ErasureInstance


def binary_identity_instance(p: float) -> ErasureInstance:
    """Identical binary pair X = Y with P_X(0) = p, Hamming cost.

    Known values: the minimum cost at budget eps is the inverse binary
    entropy of max(0, h(p) - eps); at eps = 0 it is min(p, 1-p).
    """
    joint = JointSource(np.array([[p, 0.0], [0.0, 1.0 - p]]))
    return ErasureInstance(source=joint, cost=hamming_cost(2), xhat_size=2)


def ternary_counterexample_instance() -> ErasureInstance:
    """Uniform ternary X, binary Y a deterministic split of X, Hamming cost.

    Y is weakly independent of X here, and repeated-symbol overwriting
    (cost 2/3) is beaten at zero leakage: the channel from
    ``ternary_counterexample_channel`` is leakage-free at cost 1/2, and
    the exact zero-leakage optimum is 1/3.
    """
    third = float(Fraction(1, 3))
    p_xy = np.array([
        [third, 0.0],
        [0.0, third],
        [0.0, third],
    ])
    return ErasureInstance(source=JointSource(p_xy), cost=hamming_cost(3), xhat_size=3)


def ternary_counterexample_channel() -> Channel:
    """The explicit leakage-free channel with expected Hamming cost 1/2."""
    r = [
        [Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)],
        [Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)],
        [Fraction(1, 2), Fraction(0), Fraction(1, 2)],
    ]
    return Channel(np.array([[float(v) for v in row] for row in r]))


def independent_pair_instance(p_x, p_y, cost: CostMatrix, xhat_size: int) -> ErasureInstance:
    """Product source: Y carries no information about X."""
    px = np.asarray(p_x, dtype=float)
    py = np.asarray(p_y, dtype=float)
    return ErasureInstance(
        source=JointSource(np.outer(px, py)),
        cost=cost,
        xhat_size=xhat_size,
    )
