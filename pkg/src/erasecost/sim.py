"""Erasure encoders and seeded Monte Carlo experiments.

Three encoder families:

* repeated-symbol: every position overwritten by the one cheapest
  constant symbol; leaks nothing, costs the constant-channel minimum.
* product: one stochastic per-letter channel applied independently at
  every position.
* finite-randomness: a finite family of deterministic per-letter maps,
  one picked uniformly per block; an illustrative finite-rate stand-in
  for the product channel it was sampled from.

Simulation draws i.i.d. (X, Y) blocks, applies the encoder, and reports
cost statistics, a per-letter leakage estimate and, for product
encoders, the empirical spectrum of (1/n) log 1/P(Xhat^n|X^n).

Reproducibility: every trial owns a counter-based Philox stream keyed by
(seed, trial index), so results are bitwise identical for any thread
count or batching; integer tallies and fixed-order reductions do the
rest.  ``ERASURE_COST_THREADS`` caps worker threads (default 1).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .cost import gamma_min
from .errors import (
    DimensionMismatchError,
    DomainError,
    MissingQuantileError,
    ScaleGuardError,
)
from .prob import Channel, JointSource, mutual_information
from .solver import ErasureInstance

_TRIALS_PER_CHUNK = 64
_QUANTILE_LEVELS = (0.5, 0.9, 0.99)
_SPECTRUM_QUANTILE = 0.9
_SPECTRUM_BINS = 32
#: second Philox key word reserved for encoder construction; trial
#: indices stay far below it
_BUILDER_STREAM_TAG = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class RepeatedSymbolEncoder:
    symbol: int
    out_size: int

    def __post_init__(self):
        if not 0 <= self.symbol < self.out_size:
            raise DomainError(
                f"symbol {self.symbol} outside output alphabet of size {self.out_size}"
            )


@dataclass(frozen=True)
class ProductEncoder:
    channel: Channel


@dataclass(frozen=True)
class FiniteRandomnessEncoder:
    """m_n deterministic per-letter maps; encoding picks one uniformly."""

    maps: np.ndarray  # (m_n, x_size) output indices
    m_n: int
    out_size: int

    def __post_init__(self):
        maps = np.asarray(self.maps, dtype=np.intp)
        if maps.ndim != 2 or maps.shape[0] != self.m_n or self.m_n < 1:
            raise DomainError("maps must be (m_n, x_size) with m_n >= 1")
        if np.any(maps < 0) or np.any(maps >= self.out_size):
            raise DomainError("map outputs outside the output alphabet")
        maps = maps.copy()
        maps.setflags(write=False)
        object.__setattr__(self, "maps", maps)


Encoder = Union[RepeatedSymbolEncoder, ProductEncoder, FiniteRandomnessEncoder]


@dataclass(frozen=True)
class SpectrumHistogram:
    bin_edges: tuple
    masses: tuple


@dataclass(frozen=True)
class SimulationReport:
    n: int
    trials: int
    avg_cost: float
    cost_quantiles: dict
    plugin_leakage_per_letter: float
    plugin_leakage_mm_per_letter: float
    spectrum_histogram: SpectrumHistogram | None
    spectrum_quantile: float | None
    seed: int


def build_repeated_encoder(inst: ErasureInstance) -> RepeatedSymbolEncoder:
    """Overwrite every position with the cheapest constant symbol."""
    _, symbol = gamma_min(inst.source.marginal_x(), inst.cost)
    return RepeatedSymbolEncoder(symbol=symbol, out_size=inst.xhat_size)


def build_product_encoder(w: Channel) -> ProductEncoder:
    return ProductEncoder(channel=w)


def build_finite_randomness_encoder(w: Channel, m_n: int, seed: int) -> FiniteRandomnessEncoder:
    """Sample m_n deterministic maps from ``w`` by inverse transform.

    Map u sends x to the row-x quantile of a seed-derived uniform, so the
    induced per-letter channel (uniform over maps) converges to ``w`` as
    m_n grows.
    """
    if m_n < 1:
        raise DomainError(f"m_n {m_n!r} < 1")
    rng = np.random.Generator(np.random.Philox(key=[seed, _BUILDER_STREAM_TAG]))
    u = rng.random((m_n, w.in_size))
    cdf = np.cumsum(w.w, axis=1)
    maps = (u[:, :, None] > cdf[None, :, :]).sum(axis=2)
    return FiniteRandomnessEncoder(maps=maps, m_n=m_n, out_size=w.out_size)


def induced_per_letter_channel(enc: FiniteRandomnessEncoder, x_size: int) -> Channel:
    """The per-letter channel realized by the uniform choice over maps."""
    w = np.zeros((x_size, enc.out_size))
    for x in range(x_size):
        w[x] = np.bincount(enc.maps[:, x], minlength=enc.out_size)
    return Channel(w / enc.m_n)


def product_block_channel(w: Channel, n: int) -> np.ndarray:
    """Blocklength-n channel matrix of the product encoder (Kronecker power)."""
    if n < 1:
        raise DomainError(f"n {n!r} < 1")
    if w.in_size ** n * w.out_size ** n > 4_000_000:
        raise ScaleGuardError("block channel too large to expand")
    block = w.w
    for _ in range(n - 1):
        block = np.kron(block, w.w)
    return block


def block_mutual_information(src: JointSource, block_channel: np.ndarray, n: int) -> float:
    """Exact I(Y^n; Xhat^n) for an i.i.d. source and an explicit block channel."""
    block = np.asarray(block_channel, dtype=np.float64)
    if block.shape[0] != src.x_size ** n:
        raise DimensionMismatchError(
            f"block channel has {block.shape[0]} rows, expected {src.x_size ** n}"
        )
    if block.shape[0] * src.y_size ** n > 4_000_000:
        raise ScaleGuardError("block joint too large to expand")
    p_block = src.p_xy
    for _ in range(n - 1):
        p_block = np.kron(p_block, src.p_xy)
    return mutual_information(JointSource(p_block.T @ block))


def _encoder_out_size(enc: Encoder) -> int:
    if isinstance(enc, ProductEncoder):
        return enc.channel.out_size
    return enc.out_size


def _simulate_chunk(inst, enc, n, seed, t0, t1, cost_out, spec_out):
    """Run trials [t0, t1); returns the chunk's pooled (Y, Xhat) counts."""
    p = inst.source.p_xy
    y_size = inst.source.y_size
    cdf_pairs = np.cumsum(p.ravel())
    counts = np.zeros((y_size, inst.xhat_size), dtype=np.int64)
    c = inst.cost.c
    if isinstance(enc, ProductEncoder):
        cdf_rows = np.cumsum(enc.channel.w, axis=1)
        logw = np.log(np.maximum(enc.channel.w, 1e-300))
    for t in range(t0, t1):
        rng = np.random.Generator(np.random.Philox(key=[seed, t]))
        u = rng.random(n)
        pair = np.minimum(np.searchsorted(cdf_pairs, u, side="right"), p.size - 1)
        x = pair // y_size
        y = pair % y_size
        if isinstance(enc, RepeatedSymbolEncoder):
            xhat = np.full(n, enc.symbol, dtype=np.intp)
        elif isinstance(enc, ProductEncoder):
            u2 = rng.random(n)
            xhat = (u2[:, None] > cdf_rows[x]).sum(axis=1)
            if spec_out is not None:
                spec_out[t] = float(-logw[x, xhat].mean())
        else:
            pick = int(rng.integers(enc.m_n))
            xhat = enc.maps[pick, x]
        cost_out[t] = float(c[x, xhat].mean())
        np.add.at(counts, (y, xhat), 1)
    return counts


def simulate(inst: ErasureInstance, enc: Encoder, n: int, trials: int,
             seed: int) -> SimulationReport:
    """Monte Carlo erasure experiment, deterministic given the seed.

    Per trial: draw an i.i.d. block from the joint source, encode, and
    record the mean per-letter cost.  Leakage per letter is the pooled
    per-letter plug-in estimate across positions and trials, except that
    repeated-symbol encoders leak exactly zero (no estimation) and
    product encoders at n <= 3 get the exact tensor value.  The plug-in
    estimate is biased; the Miller-Madow corrected value is reported
    alongside it.
    """
    if n < 1 or trials < 1:
        raise DomainError("n and trials must be >= 1")
    if n * trials > 10 ** 9:
        raise ScaleGuardError(f"n*trials = {n * trials} exceeds 1e9")
    if isinstance(enc, ProductEncoder) and enc.channel.in_size != inst.source.x_size:
        raise DimensionMismatchError("product encoder input size != source x-size")
    if isinstance(enc, FiniteRandomnessEncoder) and enc.maps.shape[1] != inst.source.x_size:
        raise DimensionMismatchError("finite-randomness maps sized for a different source")
    if _encoder_out_size(enc) != inst.xhat_size:
        raise DimensionMismatchError("encoder output size != instance xhat_size")

    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    cost_vals = np.zeros(trials)
    is_product = isinstance(enc, ProductEncoder)
    spec_vals = np.zeros(trials) if is_product else None

    chunks = [(t0, min(t0 + _TRIALS_PER_CHUNK, trials))
              for t0 in range(0, trials, _TRIALS_PER_CHUNK)]
    threads = max(1, int(os.environ.get("ERASURE_COST_THREADS", "1")))
    if threads == 1 or len(chunks) == 1:
        chunk_counts = [
            _simulate_chunk(inst, enc, n, seed, t0, t1, cost_vals, spec_vals)
            for t0, t1 in chunks
        ]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunk_counts = list(pool.map(
                lambda span: _simulate_chunk(inst, enc, n, seed, span[0], span[1],
                                             cost_vals, spec_vals),
                chunks,
            ))
    counts = np.zeros((inst.source.y_size, inst.xhat_size), dtype=np.int64)
    for part in chunk_counts:
        counts += part

    avg_cost = float(np.mean(cost_vals))
    quantiles = {
        q: float(np.quantile(cost_vals, q, method="higher"))
        for q in _QUANTILE_LEVELS
    }

    if isinstance(enc, RepeatedSymbolEncoder):
        leak = leak_mm = 0.0
    elif is_product and n <= 3:
        leak = block_mutual_information(
            inst.source, product_block_channel(enc.channel, n), n) / n
        leak_mm = leak
    else:
        leak, leak_mm = _pooled_plugin_leakage(counts)

    histogram = None
    spectrum_quantile = None
    if is_product:
        masses, edges = np.histogram(spec_vals, bins=_SPECTRUM_BINS)
        histogram = SpectrumHistogram(
            bin_edges=tuple(float(e) for e in edges),
            masses=tuple(float(m) / trials for m in masses),
        )
        spectrum_quantile = float(
            np.quantile(spec_vals, _SPECTRUM_QUANTILE, method="higher"))

    return SimulationReport(
        n=n,
        trials=trials,
        avg_cost=avg_cost,
        cost_quantiles=quantiles,
        plugin_leakage_per_letter=leak,
        plugin_leakage_mm_per_letter=leak_mm,
        spectrum_histogram=histogram,
        spectrum_quantile=spectrum_quantile,
        seed=seed,
    )


def _pooled_plugin_leakage(counts: np.ndarray) -> tuple[float, float]:
    total = int(counts.sum())
    p_hat = counts / total
    leak = mutual_information(JointSource(p_hat))
    k_y = int((counts.sum(axis=1) > 0).sum())
    k_x = int((counts.sum(axis=0) > 0).sum())
    k_joint = int((counts > 0).sum())
    corrected = leak + (k_y + k_x - k_joint - 1) / (2.0 * total)
    return leak, max(corrected, 0.0)


def worst_case_proxy(report: SimulationReport, delta: float) -> float:
    """(1-delta)-quantile of the per-block cost: finite-n worst-case proxy."""
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta {delta!r} outside (0, 1)")
    target = 1.0 - delta
    for level, value in report.cost_quantiles.items():
        if abs(level - target) <= 1e-12:
            return value
    raise MissingQuantileError(
        f"quantile {target} not recorded; available: {sorted(report.cost_quantiles)}"
    )
