"""Boundary combinatorics of the (0,4) and (1,1) dormant modular curves.

The level-N bullet and the lower-level bullets of the B-set definition are
handled uniformly as "for every 1 <= N' <= N", which is exact because the
fold ``[a]_N`` is the identity on B_N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .arith import (
    EdgeLabel,
    PrimeLevel,
    RadiusClass,
    bracket,
    delta_inv_rep,
    delta_rep,
    digits,
    edge_labels,
    is_edge_label,
    star_of,
)
from .errors import InputError, TriEqualityViolation

DEFAULT_MAX_ENUM = 10**6

# The three orderings of (l1, l2, l3, l4) whose B-sets give C^0, C^1, C^inf.
PERMUTATIONS = {
    "0": (0, 3, 1, 2),
    "1": (0, 2, 1, 3),
    "inf": (0, 1, 2, 3),
}


@dataclass(frozen=True)
class RadiiTuple4:
    ctx: PrimeLevel
    rho: tuple

    def __post_init__(self):
        rho = tuple(self.rho)
        if len(rho) != 4:
            raise InputError("need exactly four radii")
        for r in rho:
            if not isinstance(r, RadiusClass) or r.ctx != self.ctx:
                raise InputError("all radii must be RadiusClass values at the same (p, N)")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_reps(cls, ctx: PrimeLevel, reps: Sequence[int]) -> "RadiiTuple4":
        return cls(ctx, tuple(RadiusClass(ctx, int(r)) for r in reps))

    @classmethod
    def from_indices(cls, ctx: PrimeLevel, lambdas: Sequence[int]) -> "RadiiTuple4":
        """Radii given as delta-indices, i.e. elements of B_N."""
        for a in lambdas:
            if not is_edge_label(ctx, int(a)):
                raise InputError(f"{a} is not in B_{ctx.N} for p={ctx.p}")
        return cls(ctx, tuple(RadiusClass(ctx, delta_rep(ctx, int(a))) for a in lambdas))

    @property
    def reps(self) -> tuple:
        return tuple(r.rep for r in self.rho)

    @property
    def lambdas(self) -> tuple:
        return tuple(delta_inv_rep(self.ctx, r.rep) for r in self.rho)

    @property
    def stars(self) -> tuple:
        return tuple(star_of(self.ctx, r.rep) for r in self.rho)


def _as_ints(ctx: PrimeLevel, lam) -> tuple:
    out = []
    for x in lam:
        if isinstance(x, EdgeLabel):
            if x.ctx != ctx:
                raise InputError("edge labels with mixed (p, N)")
            out.append(x.value)
        else:
            if not is_edge_label(ctx, int(x)):
                raise InputError(f"{x} is not in B_{ctx.N} for p={ctx.p}")
            out.append(int(x))
    return tuple(out)


def _pair_window(a: int, b: int, P: int) -> tuple:
    return abs(a - b), min(a + b, P - 2 - a - b)


def _level_windows(p: int, N: int, lam: tuple) -> list:
    """Per level M = 1..N, the admissible window [lo, hi] for the fold [eta]_M."""
    out = []
    for M in range(1, N + 1):
        P = p**M
        f = [bracket(a, M, p) for a in lam]
        lo1, hi1 = _pair_window(f[0], f[1], P)
        lo2, hi2 = _pair_window(f[2], f[3], P)
        out.append((max(lo1, lo2), min(hi1, hi2)))
    return out


def _b04_ints(p: int, N: int, lam: tuple) -> list:
    windows = _level_windows(p, N, lam)
    if any(lo > hi for lo, hi in windows):
        return []
    lo_top, hi_top = windows[-1]
    out = []
    for eta in range(lo_top, hi_top + 1):
        for M in range(1, N):
            lo, hi = windows[M - 1]
            P = p**M
            r = eta % P
            r = min(r, P - 1 - r)
            if not lo <= r <= hi:
                break
        else:
            out.append(eta)
    return out


def enumerate_B04(ctx: PrimeLevel, lam) -> list:
    """Sorted elements eta of B_N admissible for both pairs (l1, l2), (l3, l4)."""
    ints = _as_ints(ctx, lam)
    if len(ints) != 4:
        raise InputError("need a 4-tuple of edge labels")
    return [EdgeLabel(ctx, e) for e in _b04_ints(ctx.p, ctx.N, ints)]


def _b11_ints(p: int, N: int, lam: int) -> list:
    bounds = []
    for M in range(1, N + 1):
        f = bracket(lam, M, p)
        bounds.append(min(2 * f, p**M - 2 * f - 2))
    if any(b < 0 for b in bounds):
        return []
    out = []
    for eta in range(bounds[-1] + 1):
        if all(bracket(eta, M, p) <= bounds[M - 1] for M in range(1, N)):
            out.append(eta)
    return out


def enumerate_B11(ctx: PrimeLevel, lam) -> list:
    (a,) = _as_ints(ctx, (lam,))
    return [EdgeLabel(ctx, e) for e in _b11_ints(ctx.p, ctx.N, a)]


def cset_11(ctx: PrimeLevel, rho: RadiusClass) -> list:
    if rho.ctx != ctx:
        raise InputError("radius class at the wrong (p, N)")
    lam = delta_inv_rep(ctx, rho.rep)
    return sorted(RadiusClass(ctx, delta_rep(ctx, e)) for e in _b11_ints(ctx.p, ctx.N, lam))


class B04Aggregates(NamedTuple):
    """Aggregates over eta in a B-set, where star = fold of 2*eta+1."""

    count: int
    sum_eta: int
    sum_star: int
    sum_star_sq: int
    sum_star_prod: int

    def __add__(self, other):
        return B04Aggregates(*(a + b for a, b in zip(self, other)))


ZERO_AGG = B04Aggregates(0, 0, 0, 0, 0)


def aggregates_of(ctx: PrimeLevel, etas) -> B04Aggregates:
    P = ctx.modulus
    n = s1 = st = st2 = stp = 0
    for e in etas:
        e = int(e)
        x = star_of(ctx, delta_rep(ctx, e))
        n += 1
        s1 += e
        st += x
        st2 += x * x
        stp += x * (P - x)
    return B04Aggregates(n, s1, st, st2, stp)


def _shift(agg: tuple, c: int) -> tuple:
    n, s1, s2 = agg
    return n, s1 + c * n, s2 + 2 * c * s1 + c * c * n


def count_B04_dp(ctx: PrimeLevel, lam) -> B04Aggregates:
    """Aggregates of B_{N,lam,0,4} without listing its elements.

    The level-M condition only sees eta mod p^M, and inside [0, p^M) it is
    the union of at most two intervals.  Splitting a range by its top digit
    therefore produces only boundary sub-ranges, and the interior digits all
    reuse one memoised full-range result carrying (count, sum, sum of squares).
    """
    p, N = ctx.p, ctx.N
    ints = _as_ints(ctx, lam)
    windows = _level_windows(p, N, ints)
    if any(lo > hi for lo, hi in windows):
        return ZERO_AGG

    def allowed(M):
        lo, hi = windows[M - 1]
        if M == N:
            return [(lo, hi)]
        P = p**M
        return [(lo, hi), (P - 1 - hi, P - 1 - lo)]

    memo = {}

    def G(M, lo, hi):
        # (count, sum r, sum r^2) over r in [lo, hi], r mod p^j admissible for j <= M
        if lo > hi:
            return (0, 0, 0)
        if M == 0:
            return (1, 0, 0) if lo <= 0 <= hi else (0, 0, 0)
        key = (M, lo, hi)
        if key in memo:
            return memo[key]
        Q = p ** (M - 1)
        n = s1 = s2 = 0
        for a, b in allowed(M):
            u, v = max(lo, a), min(hi, b)
            if u > v:
                continue
            full = []
            for d in range(u // Q, v // Q + 1):
                a2, b2 = max(u - d * Q, 0), min(v - d * Q, Q - 1)
                if a2 == 0 and b2 == Q - 1:
                    full.append(d)
                    continue
                part = _shift(G(M - 1, a2, b2), d * Q)
                n, s1, s2 = n + part[0], s1 + part[1], s2 + part[2]
            if full:
                cn, c1, c2 = G(M - 1, 0, Q - 1)
                k, sd, sd2 = len(full), sum(full), sum(d * d for d in full)
                n += k * cn
                s1 += k * c1 + cn * Q * sd
                s2 += k * c2 + 2 * Q * c1 * sd + cn * Q * Q * sd2
        memo[key] = (n, s1, s2)
        return memo[key]

    P = ctx.modulus
    lo, hi = windows[-1]
    T = (P - 2) // 4  # fold(2*eta+1) = 2*eta+1 exactly when eta <= T
    n1, a1, b1 = G(N, lo, min(hi, T))
    n2, a2, b2 = G(N, max(lo, T + 1), hi)
    st = (2 * a1 + n1) + (n2 * (P - 1) - 2 * a2)
    st2 = (4 * b1 + 4 * a1 + n1) + (n2 * (P - 1) ** 2 - 4 * (P - 1) * a2 + 4 * b2)
    return B04Aggregates(n1 + n2, a1 + a2, st, st2, P * st - st2)


@dataclass
class CSetReport:
    ctx: PrimeLevel
    rho: RadiiTuple4
    c0: Optional[list]
    c1: Optional[list]
    cinf: Optional[list]
    sizes: tuple  # (|C^0|, |C^1|, |C^inf|)
    total: int
    sum_star: int
    sum_star_prod: int
    sum_star_sq: int
    method: str = "enumeration"
    sum_delta_inv: int = 0
    per_set: dict = field(default_factory=dict)

    @property
    def lists(self) -> dict:
        return {"0": self.c0, "1": self.c1, "inf": self.cinf}


def _permuted(lam: tuple, perm: tuple) -> tuple:
    return tuple(lam[i] for i in perm)


def csets_04(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM, method: str = "auto") -> CSetReport:
    """The three boundary sets C^0, C^1, C^inf and the sums the genus formula needs.

    ``method`` is ``"enumeration"``, ``"dp"`` or ``"auto"`` (enumerate while
    p^N <= max_enum).  The DP path leaves the member lists as ``None``.
    """
    ctx = rho.ctx
    lam = rho.lambdas
    if method == "auto":
        method = "enumeration" if ctx.modulus <= max_enum else "dp"
    if method not in ("enumeration", "dp"):
        raise InputError(f"unknown method {method!r}")
    lists = {}
    aggs = {}
    for key, perm in PERMUTATIONS.items():
        t = _permuted(lam, perm)
        if method == "enumeration":
            etas = _b04_ints(ctx.p, ctx.N, t)
            lists[key] = sorted(RadiusClass(ctx, delta_rep(ctx, e)) for e in etas)
            aggs[key] = aggregates_of(ctx, etas)
        else:
            lists[key] = None
            aggs[key] = count_B04_dp(ctx, t)
    sizes = tuple(aggs[k].count for k in ("0", "1", "inf"))
    total_agg = aggs["0"] + aggs["1"] + aggs["inf"]
    report = CSetReport(
        ctx=ctx,
        rho=rho,
        c0=lists["0"],
        c1=lists["1"],
        cinf=lists["inf"],
        sizes=sizes,
        total=total_agg.count,
        sum_star=total_agg.sum_star,
        sum_star_prod=total_agg.sum_star_prod,
        sum_star_sq=total_agg.sum_star_sq,
        method=method,
        sum_delta_inv=total_agg.sum_eta,
        per_set=aggs,
    )
    if len(set(sizes)) != 1:
        raise TriEqualityViolation(
            f"|C^0|, |C^1|, |C^inf| = {sizes} differ for radii {rho.reps} at p={ctx.p}, N={ctx.N}"
        )
    return report


def degree_04(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    return csets_04(rho, max_enum=max_enum).sizes[0]


def ds_membership(p: int, s: int, lam: Sequence[int]) -> bool:
    if not 0 <= s <= (p - 3) // 2:
        raise InputError(f"s must lie in 0..{(p - 3) // 2}")
    lam = [int(x) for x in lam]
    if len(lam) != 4:
        raise InputError("need a 4-tuple")
    pairs = [(lam[i], lam[j]) for i in range(4) for j in range(i + 1, 4)]
    low = min(min(a + b, p - 2 - a - b) for a, b in pairs)
    spread = max(abs(a - b) for a, b in pairs)
    return s <= low - spread


def dsn_membership(ctx: PrimeLevel, s: int, lam) -> bool:
    ints = _as_ints(ctx, lam)
    cols = [digits(a, ctx.p, ctx.N) for a in ints]
    b1 = PrimeLevel(ctx.p, 1)
    if not all(is_edge_label(b1, d) for c in cols for d in c):
        return False
    return all(ds_membership(ctx.p, s, [c[j] for c in cols]) for j in range(ctx.N))
