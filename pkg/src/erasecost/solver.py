"""Minimum expected overwrite cost under a leakage budget.

The central problem: given a joint source (X, Y), a per-letter cost
matrix and an output alphabet, find the channel W(xhat|x) minimizing
E[c(X, Xhat)] subject to I(Y; Xhat) <= eps, where Xhat is produced from
X alone.  The objective is linear in W and the leakage is convex in W,
so this is a convex program over a product of simplices.

Two solution paths:

* eps = 0: the leakage-free channels form a polytope cut out by linear
  equations (the induced (Y, Xhat) joint must factorize), so the problem
  is a plain linear program and is solved exactly by a simplex method.
  The optimum can sit at a vertex that iterative interior methods only
  approach, and the zero-budget case is where the headline fixture
  values live, hence the exact route.

* eps > 0: Frank-Wolfe (conditional gradient) on the Lagrangian
  E[c] + lam * I(Y; Xhat), with the multiplier found by bisection on the
  achieved leakage.  The gradient of the leakage has a closed form and
  the linear subproblem over the product of simplices is a per-row
  argmin, which is what makes Frank-Wolfe cheap here.  A final convex
  mix between the two bracket channels lands the leakage on the budget
  boundary, which is where the constrained optimum sits.

A brute-force simplex-grid oracle, the binary closed form, mixture
composition over a leakage split, and a continuity probe round out the
module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import linprog
from scipy.special import xlogy

from .cost import CostMatrix, expected_cost, gamma_min
from .errors import (
    ConfigError,
    DimensionMismatchError,
    DomainError,
    InternalError,
    ScaleGuardError,
)
from .prob import (
    Channel,
    JointSource,
    binary_entropy,
    binary_entropy_inverse,
    constant_channel,
    mutual_information,
)

_FLOOR = 1e-300
_EMPTY_COL = 1e-15


@dataclass(frozen=True)
class ErasureInstance:
    """One solvable problem: joint source, cost matrix, output alphabet."""

    source: JointSource
    cost: CostMatrix
    xhat_size: int

    def __post_init__(self):
        if self.xhat_size < 1:
            raise DimensionMismatchError("xhat_size must be >= 1")
        if self.cost.x_size != self.source.x_size:
            raise DimensionMismatchError(
                f"cost x-size {self.cost.x_size} != source x-size {self.source.x_size}"
            )
        if self.cost.xhat_size != self.xhat_size:
            raise DimensionMismatchError(
                f"cost xhat-size {self.cost.xhat_size} != xhat_size {self.xhat_size}"
            )


class SolverStatus(Enum):
    CONVERGED = "converged"
    ITERATION_CAP = "iteration_cap"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SolverConfig:
    """Numeric knobs; every tolerance must be positive."""

    optimality_tol: float = 1e-7
    max_iters: int = 20000
    feasibility_tol: float = 1e-6
    zero_leakage_tol: float = 1e-9

    def __post_init__(self):
        if self.optimality_tol <= 0 or self.feasibility_tol <= 0 or self.zero_leakage_tol <= 0:
            raise ConfigError("tolerances must be positive")
        if self.max_iters <= 0:
            raise ConfigError("max_iters must be positive")


_DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class SolverResult:
    min_cost: float
    channel: Channel
    leakage: float
    status: SolverStatus
    duality_gap: float
    iterations: int


@dataclass(frozen=True)
class ContinuityReport:
    """Solver values along a decreasing leakage-budget sequence."""

    eps_values: tuple
    costs: tuple
    cost_at_zero: float
    gaps: tuple
    max_tail_gap: float
    final_gap: float
    tolerance: float
    converged: bool


class _Problem:
    """Cached arrays for one instance: marginals, logs, gradients' constants."""

    def __init__(self, inst: ErasureInstance):
        self.inst = inst
        self.pxy = inst.source.p_xy
        self.px = self.pxy.sum(axis=1)
        self.py = self.pxy.sum(axis=0)
        self.c = inst.cost.c
        self.m = inst.xhat_size
        self.n = inst.source.x_size
        self.pxc = self.px[:, None] * self.c
        self.cols = np.arange(self.m)
        self.logpy = np.log(np.maximum(self.py, _FLOOR))
        # per-row relative entropy of P_{Y|x} against P_Y, weighted by px;
        # equals the one-sided leakage derivative of opening an unused
        # output column from row x
        rel = np.zeros(self.n)
        for x in range(self.n):
            row = self.pxy[x]
            mask = row > 0.0
            if mask.any():
                rel[x] = float(
                    (row[mask] * (np.log(row[mask]) - self.logpy[mask] - math.log(self.px[x]))).sum()
                )
        self.row_relent = rel

    def leakage(self, w: np.ndarray) -> float:
        j = self.pxy.T @ w
        ph = self.px @ w
        mask = j > 0.0
        if not mask.any():
            return 0.0
        denom = np.outer(self.py, ph)
        vals = j[mask] * (np.log(j[mask]) - np.log(denom[mask]))
        return max(float(vals.sum()), 0.0)

    def cost_of(self, w: np.ndarray) -> float:
        return float((self.pxc * w).sum())


def _mi_gradient(prob: _Problem, j: np.ndarray, ph: np.ndarray) -> np.ndarray:
    logj = np.log(np.maximum(j, _FLOOR))
    logph = np.log(np.maximum(ph, _FLOOR))
    g = prob.pxy @ (logj - prob.logpy[:, None]) - np.outer(prob.px, logph)
    empty = ph <= _EMPTY_COL
    if empty.any():
        g[:, empty] = prob.row_relent[:, None]
    return g


def _exact_step(prob, lam, dcost, j, dj, ph, dph, t_cap) -> float:
    """Minimize the Lagrangian along w + t*direction for t in [0, t_cap].

    The directional derivative is monotone (the objective is convex along
    the segment), so safeguarded Newton on it converges in a few steps.
    """
    scale = abs(dcost) + lam + 1.0

    def dphi(t: float) -> float:
        jt = j + t * dj
        pt = ph + t * dph
        s = float((dj * np.log(np.maximum(jt, _FLOOR))).sum()
                  - (dph * np.log(np.maximum(pt, _FLOOR))).sum())
        return dcost + lam * s

    if dphi(t_cap) <= 0.0:
        return t_cap
    lo, hi = 0.0, t_cap
    t = 0.5 * t_cap
    for _ in range(40):
        d = dphi(t)
        if abs(d) <= 1e-12 * scale:
            return t
        if d > 0.0:
            hi = t
        else:
            lo = t
        if hi - lo <= 1e-13 * t_cap:
            break
        jt = j + t * dj
        pt = ph + t * dph
        curv = float((dj * dj / np.maximum(jt, _FLOOR)).sum()
                     - (dph * dph / np.maximum(pt, _FLOOR)).sum())
        tn = t - d / (lam * curv) if curv > 0.0 else -1.0
        if not (lo + 1e-15 * t_cap < tn < hi - 1e-15 * t_cap):
            tn = 0.5 * (lo + hi)
        t = tn
    return 0.5 * (lo + hi)


#: channel entries below this are ignored when picking away atoms; they
#: contribute under 1e-10 nats to any value involved
_SUPPORT_TOL = 1e-11


def _fw_lagrangian(prob, lam, w, tol, max_iters):
    """Away-step Frank-Wolfe on E[c] + lam * I(Y;Xhat) over the product
    of simplices.

    Mutates and returns ``w``.  The induced joint and output marginal are
    updated incrementally (both are linear in w) and refreshed
    periodically to cancel drift.  The linear subproblem is a per-row
    argmin; away steps (shifting mass off the worst in-support column per
    row) restore the linear convergence that plain conditional gradient
    loses when the optimum sits on a face.

    Iterates are kept in the relative interior: steps stop a hair short
    of the boundary, so no output column is ever exactly unused.  That
    matters because at a vertex with empty columns the per-row gradient
    surrogate misses joint multi-row descent directions (the leakage
    derivative of a mixed move undercuts the row-wise sum) and the gap
    certificate would be invalid; in the interior the gradient is exact.
    Mass driven against the boundary lands below the support threshold
    and stops influencing atom selection, matching a true atom drop to
    within 1e-10.
    """
    rows = np.arange(w.shape[0])
    ph = prob.px @ w
    if (ph <= 0.0).any():
        w *= 1.0 - 1e-3
        w += 1e-3 / prob.m
    j = prob.pxy.T @ w
    ph = prob.px @ w
    gap = math.inf
    it = 0
    for it in range(1, max_iters + 1):
        if it % 256 == 0:
            j = prob.pxy.T @ w
            ph = prob.px @ w
        g = prob.pxc + lam * _mi_gradient(prob, j, ph)
        gw = float((g * w).sum())
        idx_fw = np.argmin(g, axis=1)
        gap = gw - float(g[rows, idx_fw].sum())
        if gap <= tol:
            break
        g_sup = np.where(w > _SUPPORT_TOL, g, -np.inf)
        idx_aw = np.argmax(g_sup, axis=1)
        away_gap = float(g[rows, idx_aw].sum()) - gw

        toward_vertex = gap >= away_gap
        idx = idx_fw if toward_vertex else idx_aw
        onehot = (idx[:, None] == prob.cols).astype(np.float64)
        jv = prob.pxy.T @ onehot
        phv = prob.px @ onehot
        vcost = float(prob.pxc[rows, idx].sum())
        wcost = float((prob.pxc * w).sum())
        if toward_vertex:
            dj, dph, dcost = jv - j, phv - ph, vcost - wcost
            t_cap = 1.0 - 1e-12
        else:
            dj, dph, dcost = j - jv, ph - phv, wcost - vcost
            a_mass = w[rows, idx]
            room = np.where(a_mass < 1.0 - 1e-12, a_mass / (1.0 - a_mass), 1e6)
            t_cap = min(float(room.min()), 1e6) * (1.0 - 1e-10)
            if t_cap <= 1e-15:
                break

        t = _exact_step(prob, lam, dcost, j, dj, ph, dph, t_cap)
        if t <= 1e-15:
            break
        if toward_vertex:
            w *= 1.0 - t
            w[rows, idx] += t
        else:
            w *= 1.0 + t
            w[rows, idx] -= t
        np.clip(w, 0.0, 1.0, out=w)
        j += t * dj
        ph += t * dph
    return w, gap, it


def _finish(prob, w, leakage, gap, iters, status, g_sym) -> SolverResult:
    w = np.clip(w, 0.0, 1.0)
    # zero-probability inputs carry no cost or leakage; pin their rows to
    # the cheapest constant symbol so results are deterministic
    massless = prob.px <= 0.0
    if massless.any():
        w[massless] = 0.0
        w[massless, g_sym] = 1.0
    channel = Channel(w)
    min_cost = expected_cost(prob.inst.source.marginal_x(), channel, prob.inst.cost)
    return SolverResult(
        min_cost=min_cost,
        channel=channel,
        leakage=leakage,
        status=status,
        duality_gap=gap,
        iterations=iters,
    )


def solve_zero_leakage(inst: ErasureInstance, cfg: SolverConfig | None = None) -> SolverResult:
    """Exact minimum cost over the leakage-free channel polytope.

    A channel is leakage-free iff the induced (Y, Xhat) joint factorizes:
    sum_x P_XY(x,y) W(xhat|x) = P_Y(y) * sum_x P_X(x) W(xhat|x) for every
    (y, xhat).  These constraints are linear in W, so the minimum is a
    linear program; it is solved by a simplex method to land exactly on a
    polytope vertex.  Never infeasible: constant channels always qualify.
    """
    cfg = cfg or _DEFAULT_CONFIG
    prob = _Problem(inst)
    n, m = prob.n, prob.m
    dep = prob.pxy - np.outer(prob.px, prob.py)  # (x, y)
    n_vars = n * m
    a_rows = []
    b_vals = []
    for x in range(n):
        row = np.zeros(n_vars)
        row[x * m:(x + 1) * m] = 1.0
        a_rows.append(row)
        b_vals.append(1.0)
    for y in range(inst.source.y_size):
        for xh in range(m):
            row = np.zeros(n_vars)
            row[xh::m] = dep[:, y]
            a_rows.append(row)
            b_vals.append(0.0)
    res = linprog(
        prob.pxc.ravel(),
        A_eq=np.array(a_rows),
        b_eq=np.array(b_vals),
        bounds=(0.0, 1.0),
        method="highs",
        options={
            "primal_feasibility_tolerance": 1e-10,
            "dual_feasibility_tolerance": 1e-10,
        },
    )
    if res.status != 0:
        raise InternalError(f"zero-leakage LP failed: {res.message}")
    w = np.clip(res.x.reshape(n, m), 0.0, 1.0)
    _, g_sym = gamma_min(inst.source.marginal_x(), inst.cost)
    out = _finish(prob, w, 0.0, 0.0, int(res.nit), SolverStatus.CONVERGED, g_sym)
    leak = prob.leakage(out.channel.w)
    if leak > cfg.zero_leakage_tol:
        raise InternalError(f"zero-leakage LP returned leakage {leak:g}")
    return SolverResult(
        min_cost=out.min_cost,
        channel=out.channel,
        leakage=leak,
        status=out.status,
        duality_gap=out.duality_gap,
        iterations=out.iterations,
    )


def solve_min_cost(inst: ErasureInstance, eps_per_letter: float,
                   cfg: SolverConfig | None = None) -> SolverResult:
    """Minimum expected cost over channels with I(Y;Xhat) <= eps_per_letter.

    eps = 0 delegates to the exact zero-leakage LP.  A budget at or above
    I(Y;X) makes the constraint vacuous (data processing), so the
    unconstrained per-row cost argmin is returned directly.  Otherwise
    the Lagrange multiplier is bisected: each trial multiplier is solved
    by warm-started Frank-Wolfe, the bracket channels (one leaking above
    the budget, one below) are finally mixed to put the leakage on the
    budget boundary, and the feasible mix is returned.
    """
    cfg = cfg or _DEFAULT_CONFIG
    if eps_per_letter < 0.0:
        raise DomainError(f"eps_per_letter {eps_per_letter!r} < 0")
    if eps_per_letter == 0.0:
        return solve_zero_leakage(inst, cfg)
    eps = float(eps_per_letter)
    prob = _Problem(inst)
    _, g_sym = gamma_min(inst.source.marginal_x(), inst.cost)

    free_idx = np.argmin(prob.c, axis=1)
    w_free = np.zeros((prob.n, prob.m))
    w_free[np.arange(prob.n), free_idx] = 1.0
    leak_free = prob.leakage(w_free)
    i_src = mutual_information(inst.source)
    if eps >= i_src or leak_free <= eps:
        return _finish(prob, w_free, leak_free, 0.0, 0, SolverStatus.CONVERGED, g_sym)

    tol = cfg.optimality_tol
    total_it = 0
    w = constant_channel(prob.n, prob.m, g_sym).w.copy()

    lam_lo, w_lo, gap_lo = 0.0, w_free, 0.0
    lam_hi = 1.0
    while True:
        w, gap, it = _fw_lagrangian(prob, lam_hi, w, tol, cfg.max_iters)
        total_it += it
        leak = prob.leakage(w)
        if leak <= eps:
            w_hi, leak_hi, gap_hi = w.copy(), leak, gap
            break
        lam_lo, w_lo, gap_lo = lam_hi, w.copy(), gap
        lam_hi *= 2.0
        if lam_hi > 2.0 ** 60:
            raise InternalError("multiplier growth failed to reach the leakage budget")

    for _ in range(80):
        if lam_hi - lam_lo <= 1e-9 * lam_hi or abs(leak_hi - eps) <= 1e-12:
            break
        lam = 0.5 * (lam_lo + lam_hi)
        w, gap, it = _fw_lagrangian(prob, lam, w, tol, cfg.max_iters)
        total_it += it
        leak = prob.leakage(w)
        if leak <= eps:
            lam_hi, w_hi, leak_hi, gap_hi = lam, w.copy(), leak, gap
        else:
            lam_lo, w_lo, gap_lo = lam, w.copy(), gap

    if eps - leak_hi > 1e-12:
        # leakage is convex along the segment, so the feasible side is an
        # interval containing t=0; bisect to its boundary
        t_lo, t_hi = 0.0, 1.0
        for _ in range(60):
            tm = 0.5 * (t_lo + t_hi)
            if prob.leakage(w_hi + tm * (w_lo - w_hi)) <= eps:
                t_lo = tm
            else:
                t_hi = tm
        w_final = w_hi + t_lo * (w_lo - w_hi)
    else:
        w_final = w_hi

    capped = gap_hi > tol or gap_lo > tol
    status = SolverStatus.ITERATION_CAP if capped else SolverStatus.CONVERGED
    return _finish(prob, w_final, prob.leakage(w_final), gap_hi, total_it, status, g_sym)


def binary_closed_form(p: float, eps: float, n: int) -> float:
    """Minimum cost for a binary identical pair under Hamming cost.

    Evaluates the inverse-binary-entropy display
    h^{-1}(max(0, h(p) - eps/n)) for p in [0, 1/2]; callers must
    canonicalize p to min(p, 1-p) first.
    """
    if not 0.0 <= p <= 0.5:
        raise DomainError(f"binary_closed_form: p={p!r} outside [0, 1/2]")
    if eps < 0.0:
        raise DomainError(f"binary_closed_form: eps={eps!r} < 0")
    if n < 1:
        raise DomainError(f"binary_closed_form: n={n!r} < 1")
    return binary_entropy_inverse(max(0.0, binary_entropy(p) - eps / n))


def min_cost_n(inst: ErasureInstance, eps_total: float, n: int,
               cfg: SolverConfig | None = None) -> float:
    """Blocklength-n minimum average cost: the single-letter solve at eps/n."""
    if n < 1:
        raise DomainError(f"min_cost_n: n={n!r} < 1")
    return solve_min_cost(inst, eps_total / n, cfg).min_cost


def _simplex_grid(m: int, steps: int) -> np.ndarray:
    """All probability vectors of length m with entries k/steps."""
    combos = itertools.combinations(range(steps + m - 1), m - 1)
    rows = []
    for cut in combos:
        prev = -1
        counts = []
        for pos in cut:
            counts.append(pos - prev - 1)
            prev = pos
        counts.append(steps + m - 2 - prev)
        rows.append(counts)
    return np.array(rows, dtype=np.float64) / steps


def brute_force_oracle(inst: ErasureInstance, eps_per_letter: float,
                       grid_steps: int) -> float:
    """Minimum cost over channels whose rows live on a simplex grid.

    Independent verification oracle: exhaustively enumerates row
    combinations with denominator ``grid_steps``, keeps those with
    leakage <= eps + 1e-9, and tracks the cheapest.  Upper-bounds the
    true optimum; the gap shrinks as the grid refines.

    Two prunings keep the enumeration honest but fast: cost is separable
    across rows, so combinations costing at least the incumbent are
    skipped outright, and Pinsker's inequality (leakage >= 2 TV^2 of the
    induced joint against the product of its marginals) rejects most
    infeasible candidates before any logarithm is taken.
    """
    if eps_per_letter < 0.0:
        raise DomainError(f"eps_per_letter {eps_per_letter!r} < 0")
    if grid_steps < 1:
        raise DomainError("grid_steps must be >= 1")
    if grid_steps > 48:
        raise ScaleGuardError(f"grid_steps {grid_steps} > 48")
    n, m = inst.source.x_size, inst.xhat_size
    if n * m > 9:
        raise ScaleGuardError(f"alphabet product {n}x{m} > 9")
    prob = _Problem(inst)
    grid = _simplex_grid(m, grid_steps)
    if grid.shape[0] ** n > 5e7:
        raise ScaleGuardError("grid enumeration too large")

    # per input symbol: row costs and row contributions to the (Y, Xhat)
    # joint, both sorted by ascending cost
    rcs, ts = [], []
    for x in range(n):
        rc = prob.px[x] * (grid @ prob.c[x])
        order = np.argsort(rc, kind="stable")
        rcs.append(rc[order])
        ts.append(prob.pxy[x][None, :, None] * grid[order][:, None, :])

    eps_tol = eps_per_letter + 1e-9
    py = prob.py[None, :, None]
    # candidate joints have row sums equal to P_Y and column sums equal to
    # the output marginal, so the leakage decomposes into three entropy sums
    h_py = float(xlogy(prob.py, prob.py).sum())
    best, _ = gamma_min(inst.source.marginal_x(), inst.cost)

    def fold_in(costs: np.ndarray, joints: np.ndarray, incumbent: float) -> float:
        ph = joints.sum(axis=1)
        tv = 0.5 * np.abs(joints - py * ph[:, None, :]).sum(axis=(1, 2))
        keep = 2.0 * tv * tv <= eps_tol
        if not keep.any():
            return incumbent
        jk = joints[keep]
        phk = ph[keep]
        mi = (xlogy(jk, jk).sum(axis=(1, 2)) - h_py
              - xlogy(phk, phk).sum(axis=1))
        feas = mi <= eps_tol
        if feas.any():
            incumbent = min(incumbent, float(costs[keep][feas].min()))
        return incumbent

    if n == 1:
        sel = rcs[0] < best - 1e-15
        if sel.any():
            best = fold_in(rcs[0][sel], ts[0][sel], best)
    elif n == 2:
        for i in range(rcs[0].shape[0]):
            base = rcs[0][i]
            if base + rcs[1][0] >= best - 1e-15:
                break
            jmax = int(np.searchsorted(rcs[1], best - 1e-15 - base))
            if jmax == 0:
                continue
            best = fold_in(base + rcs[1][:jmax], ts[0][i][None] + ts[1][:jmax], best)
    else:
        r1, r2 = rcs[1].shape[0], rcs[2].shape[0]
        pair_cost = (rcs[1][:, None] + rcs[2][None, :]).ravel()
        pair_joint = (ts[1][:, None] + ts[2][None, :]).reshape(r1 * r2, prob.py.size, m)
        pair_min = float(pair_cost.min())
        for i in range(rcs[0].shape[0]):
            base = rcs[0][i]
            if base + pair_min >= best - 1e-15:
                break
            sel = np.flatnonzero(pair_cost < best - 1e-15 - base)
            for s in range(0, sel.size, 262144):
                blk = sel[s:s + 262144]
                best = fold_in(base + pair_cost[blk], ts[0][i][None] + pair_joint[blk], best)
    return best


def _require_identical_pair(inst: ErasureInstance, name: str) -> None:
    p = inst.source.p_xy
    if p.shape[0] != p.shape[1] or float(np.abs(p - np.diag(np.diag(p))).sum()) > 1e-12:
        raise DomainError(f"{name}: mixture composition requires an identical pair (X = Y)")


class _CachedCurve:
    """Memoized eps -> min_cost evaluations for one instance."""

    def __init__(self, inst: ErasureInstance, cfg: SolverConfig | None):
        self.inst = inst
        self.cfg = cfg
        self.cache: dict[float, float] = {}

    def __call__(self, eps: float) -> float:
        eps = max(float(eps), 0.0)
        if eps not in self.cache:
            self.cache[eps] = solve_min_cost(self.inst, eps, self.cfg).min_cost
        return self.cache[eps]


def mixed_source_cost(inst1: ErasureInstance, inst2: ErasureInstance,
                      alpha: float, eps: float, grid: int,
                      cfg: SolverConfig | None = None):
    """Minimum cost of a two-component mixture over leakage splits.

    Minimizes alpha*C1(eps1) + (1-alpha)*C2(eps2) over splits with
    alpha*eps1 + (1-alpha)*eps2 <= eps, by a coarse grid on eps1 followed
    by golden-section refinement (each component curve is convex in its
    budget, so the scalarized objective is unimodal).  Weight alpha in
    {0, 1} collapses to the single remaining component.

    Returns (value, (eps1, eps2)) for the best split found.
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha {alpha!r} outside [0, 1]")
    if eps < 0.0:
        raise DomainError(f"eps {eps!r} < 0")
    if grid < 1:
        raise DomainError("grid must be >= 1")
    if inst1.cost.c.shape != inst2.cost.c.shape:
        raise DimensionMismatchError("mixture components must share cost matrix shape")
    _require_identical_pair(inst1, "inst1")
    _require_identical_pair(inst2, "inst2")
    if alpha == 1.0:
        return solve_min_cost(inst1, eps, cfg).min_cost, (eps, 0.0)
    if alpha == 0.0:
        return solve_min_cost(inst2, eps, cfg).min_cost, (0.0, eps)

    c1 = _CachedCurve(inst1, cfg)
    c2 = _CachedCurve(inst2, cfg)

    def eps2_of(t: float) -> float:
        return max((eps - alpha * t) / (1.0 - alpha), 0.0)

    def objective(t: float) -> float:
        return alpha * c1(t) + (1.0 - alpha) * c2(eps2_of(t))

    if eps == 0.0:
        return objective(0.0), (0.0, 0.0)

    t_hi = eps / alpha
    pts = list(np.linspace(0.0, t_hi, max(grid, 2)))
    evals = {t: objective(t) for t in pts}
    i_best = int(np.argmin([evals[t] for t in pts]))
    a = pts[max(i_best - 1, 0)]
    b = pts[min(i_best + 1, len(pts) - 1)]

    ratio = 0.5 * (math.sqrt(5.0) - 1.0)
    cpt = b - ratio * (b - a)
    dpt = a + ratio * (b - a)
    fc, fd = objective(cpt), objective(dpt)
    evals[cpt], evals[dpt] = fc, fd
    while b - a > 1e-4:
        if fc <= fd:
            b, dpt, fd = dpt, cpt, fc
            cpt = b - ratio * (b - a)
            fc = objective(cpt)
            evals[cpt] = fc
        else:
            a, cpt, fc = cpt, dpt, fd
            dpt = a + ratio * (b - a)
            fd = objective(dpt)
            evals[dpt] = fd
    t_best = min(evals, key=evals.get)
    return evals[t_best], (t_best, eps2_of(t_best))


def continuity_probe(inst: ErasureInstance, eps_sequence,
                     cfg: SolverConfig | None = None,
                     tol: float = 1e-3) -> ContinuityReport:
    """Solver values along a decreasing budget sequence, against the value at 0.

    The gap |C(eps_k) - C(0)| should shrink to zero as the budgets do;
    ``converged`` records whether the final gap clears ``tol``.
    """
    seq = [float(e) for e in eps_sequence]
    if not seq:
        raise DomainError("eps_sequence is empty")
    if any(e < 0.0 for e in seq):
        raise DomainError("eps_sequence values must be >= 0")
    if any(b >= a for a, b in zip(seq, seq[1:])):
        raise DomainError("eps_sequence must be strictly decreasing")
    cost_zero = solve_zero_leakage(inst, cfg).min_cost
    costs = tuple(solve_min_cost(inst, e, cfg).min_cost for e in seq)
    gaps = tuple(abs(c - cost_zero) for c in costs)
    tail = max(1, len(seq) // 4)
    return ContinuityReport(
        eps_values=tuple(seq),
        costs=costs,
        cost_at_zero=cost_zero,
        gaps=gaps,
        max_tail_gap=max(gaps[-tail:]),
        final_gap=gaps[-1],
        tolerance=tol,
        converged=gaps[-1] <= tol,
    )
