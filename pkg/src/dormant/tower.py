"""Towers of dormant modular curves under level reduction.

A p-adic radius datum rho in (Z_p^x/{+-1})^4 is truncated level by level,
and for every level the boundary count (a lower bound for the number of
rational places) and the genus are computed.  Log-scale comparisons are
done in interval arithmetic so that every pass/fail verdict is rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import iv, mp, mpf

from .arith import PrimeLevel, is_edge_label, unit_fold
from .csets import DEFAULT_MAX_ENUM, RadiiTuple4, csets_04, dsn_membership
from .errors import EmptyModuli, InputError, MembershipFailure
from .invariants import genus_raw_from, genus_upper_bound

KINDS = ("constant", "rational", "digits")
DEFAULT_PRECISION = 128


@dataclass(frozen=True)
class PadicRadiusSpec:
    """A 4-tuple of p-adic radii, given in one of three ways.

    constant: edge labels lambda_i with rho_N = delta_N(lambda_i) at every level.
    rational: fractions a/b (b prime to p) with rho_N = class of a/b mod p^N.
    digits:   base-p digits (least significant first) of a unit u_i,
              with rho_N = class of u_i mod p^N.
    """

    p: int
    kind: str
    data: tuple

    def __post_init__(self):
        PrimeLevel(self.p, 1)
        if self.kind not in KINDS:
            raise InputError(f"unknown radius spec kind {self.kind!r}; expected one of {KINDS}")
        if len(self.data) != 4:
            raise InputError("a radius spec needs exactly four entries")
        if self.kind == "rational":
            for x in self.data:
                x = Fraction(x)
                if x.denominator % self.p == 0:
                    raise InputError(f"denominator of {x} is divisible by p={self.p}")
                if x.numerator % self.p == 0:
                    raise InputError(f"{x} is not a p-adic unit")
        elif self.kind == "digits":
            for ds in self.data:
                if not ds or any(not 0 <= d < self.p for d in ds):
                    raise InputError(f"bad base-{self.p} digit sequence {ds}")
                if ds[0] == 0:
                    raise InputError("digit stream must start with a nonzero digit (unit)")

    @classmethod
    def constant(cls, p: int, lambdas: Sequence[int]) -> "PadicRadiusSpec":
        return cls(p, "constant", tuple(int(x) for x in lambdas))

    @classmethod
    def rational(cls, p: int, values) -> "PadicRadiusSpec":
        return cls(p, "rational", tuple(Fraction(x) for x in values))

    @classmethod
    def digit_stream(cls, p: int, streams) -> "PadicRadiusSpec":
        return cls(p, "digits", tuple(tuple(int(d) for d in s) for s in streams))

    @property
    def max_level(self) -> Optional[int]:
        if self.kind == "digits":
            return min(len(s) for s in self.data)
        return None

    def describe(self) -> dict:
        if self.kind == "rational":
            data = [str(x) for x in self.data]
        else:
            data = [list(x) if isinstance(x, tuple) else x for x in self.data]
        return {"p": self.p, "kind": self.kind, "data": data}


def truncate_radii(spec: PadicRadiusSpec, N: int) -> RadiiTuple4:
    ctx = PrimeLevel(spec.p, N)
    P = ctx.modulus
    if spec.kind == "constant":
        for lam in spec.data:
            if not is_edge_label(ctx, lam):
                raise InputError(f"lambda={lam} is not in B_N for p={spec.p}, N={N}")
        return RadiiTuple4.from_indices(ctx, spec.data)
    if spec.kind == "rational":
        reps = [x.numerator * pow(x.denominator, -1, P) % P for x in spec.data]
    else:
        if N > spec.max_level:
            raise InputError(f"digit streams only determine levels up to {spec.max_level}")
        reps = [sum(d * spec.p**i for i, d in enumerate(s[:N])) for s in spec.data]
    return RadiiTuple4.from_reps(ctx, [unit_fold(r, ctx) for r in reps])


def p_lower_bound(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    """Certified lower bound for the number of rational places: the boundary count."""
    total = csets_04(rho, max_enum=max_enum).total
    if total == 0:
        raise EmptyModuli(f"boundary sets are empty for radii {rho.reps} at level {rho.ctx.N}")
    return total


# ---- exact and interval comparisons -------------------------------------


def ratio_at_least(P: int, g, alpha: Fraction, c) -> bool:
    """Exact test of P / g^alpha >= c for rational alpha = u/v >= 0 and c >= 0."""
    alpha, g, c = Fraction(alpha), Fraction(g), Fraction(c)
    if alpha < 0:
        raise InputError("alpha must be nonnegative")
    u, v = alpha.numerator, alpha.denominator
    if g == 0:
        return u > 0 or P >= c
    return Fraction(P) ** v >= c**v * g**u


def ratio_ge_ratio(P1: int, g1, P2: int, g2, alpha: Fraction) -> bool:
    """Exact test of P1 / g1^alpha >= P2 / g2^alpha (zero genus means an infinite ratio)."""
    alpha, g1, g2 = Fraction(alpha), Fraction(g1), Fraction(g2)
    u, v = alpha.numerator, alpha.denominator
    if u == 0:
        return P1 >= P2
    if g1 == 0:
        return True
    if g2 == 0:
        return False
    return Fraction(P1) ** v * g2**u >= Fraction(P2) ** v * g1**u


def _to_iv(x: Fraction):
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def ratio_decimal(P: int, g, alpha, precision: int = DEFAULT_PRECISION, digits: int = 20) -> str:
    """P / g^alpha as a decimal string (``inf`` when g = 0 and alpha > 0)."""
    g = Fraction(g)
    alpha = Fraction(alpha)
    if g == 0:
        return "inf" if alpha > 0 else mp.nstr(mpf(P), digits)
    with mp.workprec(precision):
        val = mpf(P) / (mpf(g.numerator) / g.denominator) ** (mpf(alpha.numerator) / alpha.denominator)
        return mp.nstr(val, digits)


@dataclass
class LevelCertificate:
    N: int
    reps: tuple
    lambdas: tuple
    membership: bool
    degree: int
    total: int
    genus: Fraction
    degree_floor_holds: bool
    total_floor_holds: bool
    genus_bound_holds: bool
    exponent: str
    lhs_interval: str
    rhs_interval: str
    verdict: str
    method: str


@dataclass
class Certificate:
    spec: PadicRadiusSpec
    s: int
    N_max: int
    precision: int
    levels: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(lv.verdict == "pass" for lv in self.levels)

    @property
    def wording(self) -> str:
        state = "certified" if self.passed else "not certified"
        return f"P >= 3(4p/(p-1))^a g^a with a = log(s)/(2 log p): {state} for N <= {self.N_max}"


def _interval_inequality(P: int, g: Fraction, p: int, s: int, precision: int):
    """Interval bounds on both sides of 2 log p (log P - log 3) >= log s log(4pg/(p-1))."""
    saved = iv.prec
    iv.prec = precision
    try:
        lhs = 2 * iv.log(p) * (iv.log(P) - iv.log(3))
        if g == 0:
            return lhs, None
        rhs = iv.log(s) * iv.log(_to_iv(Fraction(4 * p, p - 1) * g))
        return lhs, rhs
    finally:
        iv.prec = saved


def alpha_goodness_certificate(
    spec: PadicRadiusSpec,
    s: int,
    N_max: int,
    precision: int = DEFAULT_PRECISION,
    max_enum: int = DEFAULT_MAX_ENUM,
) -> Certificate:
    """Level-by-level check of P * g^(-a) >= 3 (4p/(p-1))^a, a = log s / (2 log p).

    A level passes when interval arithmetic at ``precision`` bits separates
    the two sides, or, if the intervals touch, when both links of the chain
    (boundary count >= 3 s^N, genus <= (p-1)p^(2N-1)/4) hold exactly.
    """
    p = spec.p
    if not 1 <= s <= (p - 3) // 2:
        raise InputError(f"s must satisfy 1 <= s <= (p-3)/2 = {(p - 3) // 2}, got {s}")
    cert = Certificate(spec, s, N_max, precision)
    for N in range(1, N_max + 1):
        rho = truncate_radii(spec, N)
        if not dsn_membership(rho.ctx, s, rho.lambdas):
            raise MembershipFailure(
                f"radii {rho.reps} (lambdas {rho.lambdas}) are not in delta(D_(s,N)) for s={s}, N={N}",
                level=N,
            )
        cset = csets_04(rho, max_enum=max_enum)
        if cset.total == 0:
            raise EmptyModuli(f"empty moduli at level {N}")
        g = genus_raw_from(cset)
        degree = cset.sizes[0]
        deg_floor = degree >= s**N
        tot_floor = cset.total >= 3 * s**N
        bound_ok = g <= genus_upper_bound(rho.ctx)
        lhs, rhs = _interval_inequality(cset.total, g, p, s, precision)
        if g == 0:
            verdict, method = "pass", "zero genus"
            rhs_txt = "n/a"
        else:
            rhs_txt = str(rhs)
            if lhs.a >= rhs.b:
                verdict, method = "pass", "interval"
            elif lhs.b < rhs.a:
                verdict, method = "fail", "interval"
            elif tot_floor and bound_ok:
                # touching intervals: the two exact links of the chain settle it
                verdict, method = "pass", "exact chain"
            else:
                verdict, method = "undecided", "interval"
        cert.levels.append(
            LevelCertificate(
                N=N,
                reps=rho.reps,
                lambdas=rho.lambdas,
                membership=True,
                degree=degree,
                total=cset.total,
                genus=g,
                degree_floor_holds=deg_floor,
                total_floor_holds=tot_floor,
                genus_bound_holds=bound_ok,
                exponent=f"log({s})/(2 log({p}))",
                lhs_interval=str(lhs),
                rhs_interval=rhs_txt,
                verdict=verdict,
                method=method,
            )
        )
    return cert


# ---- tower report --------------------------------------------------------


@dataclass
class TowerRow:
    N: int
    reps: tuple
    lambdas: tuple
    degree: int
    total: int
    genus: Fraction
    p_lower: int
    ratios: dict  # alpha (Fraction) -> decimal string

    @property
    def genus_integral(self) -> bool:
        return self.genus.denominator == 1


@dataclass
class TowerReport:
    spec: PadicRadiusSpec
    alphas: tuple
    rows: list
    verdicts: dict  # alpha -> bool
    tower_condition: bool
    non_increasing_levels: list
    delta_lower: Optional[Fraction]
    delta_step: Fraction
    notes: list = field(default_factory=list)


def _reference_row(rows):
    for r in rows:
        if r.genus > 0:
            return r
    return None


def _bounded_by_first(rows, alpha) -> bool:
    ref = _reference_row(rows)
    if ref is None:
        return True
    return all(ratio_ge_ratio(r.total, r.genus, ref.total, ref.genus, alpha) for r in rows)


def tower_report(
    spec: PadicRadiusSpec,
    N_max: int,
    alphas: Sequence = (Fraction(1, 2),),
    precision: int = DEFAULT_PRECISION,
    delta_step: Fraction = Fraction(1, 64),
    max_enum: int = DEFAULT_MAX_ENUM,
) -> TowerReport:
    alphas = tuple(Fraction(a) for a in alphas)
    rows = []
    for N in range(1, N_max + 1):
        rho = truncate_radii(spec, N)
        cset = csets_04(rho, max_enum=max_enum)
        if cset.total == 0:
            raise EmptyModuli(f"boundary sets are empty at level {N} for radii {rho.reps}")
        g = genus_raw_from(cset)
        rows.append(
            TowerRow(
                N=N,
                reps=rho.reps,
                lambdas=rho.lambdas,
                degree=cset.sizes[0],
                total=cset.total,
                genus=g,
                p_lower=cset.total,
                ratios={a: ratio_decimal(cset.total, g, a, precision) for a in alphas},
            )
        )
    verdicts = {a: _bounded_by_first(rows, a) for a in alphas}
    flat = [r.N for prev, r in zip(rows, rows[1:]) if r.genus <= prev.genus]
    steps = int(1 / Fraction(delta_step))
    grid = [k * Fraction(delta_step) for k in range(steps + 1)]
    good = [a for a in grid if _bounded_by_first(rows, a)]
    notes = []
    if flat:
        notes.append("genus does not increase at some level: not a tower in the computed range")
    if any(not r.genus_integral for r in rows):
        notes.append("genus formula is non-integral at some level")
    notes.append(f"ratios and the delta estimate are empirical for N <= {N_max}")
    return TowerReport(
        spec=spec,
        alphas=alphas,
        rows=rows,
        verdicts=verdicts,
        tower_condition=not flat,
        non_increasing_levels=flat,
        delta_lower=max(good) if good else None,
        delta_step=Fraction(delta_step),
        notes=notes,
    )
