"""Genus, degree and critical-point formulas for (0,4) dormant modular curves.

Everything here is exact: ``fractions.Fraction`` over Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import PrimeLevel
from .csets import DEFAULT_MAX_ENUM, CSetReport, RadiiTuple4, csets_04
from .errors import EmptyModuli, HypothesisViolation, InputError, IntegralityViolation


def _nonempty(cset: CSetReport) -> None:
    if cset.total == 0:
        raise EmptyModuli(
            f"boundary sets are empty for radii {cset.rho.reps} at p={cset.ctx.p}, N={cset.ctx.N}"
        )


def _rho_term(rho: RadiiTuple4) -> int:
    P = rho.ctx.modulus
    return sum(x * (P - x) for x in rho.stars)


def genus_raw_from(cset: CSetReport) -> Fraction:
    """The general genus formula evaluated before any integrality check."""
    P = cset.ctx.modulus
    C = cset.total
    first = Fraction(-3 * P + 1 + _rho_term(cset.rho), 6 * P) * C
    via_c0 = Fraction(-3 * P + 1 + _rho_term(cset.rho), 2 * P) * cset.sizes[0]
    # the two displayed forms agree exactly because |C| = 3|C^0|
    assert first == via_c0
    return 1 + first - Fraction(cset.sum_star_prod, 2 * P)


def genus_upper_bound(ctx: PrimeLevel) -> Fraction:
    return Fraction((ctx.p - 1) * ctx.p ** (2 * ctx.N - 1), 4)


def degree_upper_bound(ctx: PrimeLevel) -> int:
    return ctx.num_classes


def simplified_hypothesis(rho: RadiiTuple4) -> bool:
    """2*delta^{-1}(rho_i) + 1 <= (p^N - 3)/4 for every i."""
    P = rho.ctx.modulus
    return all(4 * (2 * lam + 1) <= P - 3 for lam in rho.lambdas)


@dataclass
class CriticalBound:
    bound: Fraction
    simplified: Optional[Fraction] = None
    label: str = "upper bound on the number of critical points"


def _critical_from(cset: CSetReport) -> CriticalBound:
    P = cset.ctx.modulus
    C = cset.total
    bound = Fraction(-P + 1 + _rho_term(cset.rho), 3 * P) * C - Fraction(cset.sum_star_prod, P)
    simplified = None
    if simplified_hypothesis(cset.rho):
        simplified = Fraction(-1 + sum(cset.rho.stars), 3) * C - cset.sum_star
    return CriticalBound(bound, simplified)


def critical_points_bound(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM) -> CriticalBound:
    cset = csets_04(rho, max_enum=max_enum)
    _nonempty(cset)
    return _critical_from(cset)


@dataclass
class GenusReport:
    ctx: PrimeLevel
    rho: RadiiTuple4
    cset: CSetReport
    genus: int
    genus_raw: Fraction
    degree: int
    genus_upper: Fraction
    degree_upper: int
    crit_bound: CriticalBound
    simplified_applicable: bool
    identity889_holds: Optional[bool] = None
    notes: list = field(default_factory=list)


def quadratic_identity_value(cset: CSetReport) -> int:
    return cset.total * (1 - sum(x * x for x in cset.rho.stars)) + 3 * cset.sum_star_sq


def genus_04(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM, cset: CSetReport = None) -> GenusReport:
    if cset is None:
        cset = csets_04(rho, max_enum=max_enum)
    _nonempty(cset)
    raw = genus_raw_from(cset)
    if raw.denominator != 1 or raw < 0:
        raise IntegralityViolation(
            f"genus formula gives {raw} for radii {rho.reps} at p={rho.ctx.p}, N={rho.ctx.N}",
            value=raw,
        )
    applicable = simplified_hypothesis(rho)
    return GenusReport(
        ctx=rho.ctx,
        rho=rho,
        cset=cset,
        genus=int(raw),
        genus_raw=raw,
        degree=cset.sizes[0],
        genus_upper=genus_upper_bound(rho.ctx),
        degree_upper=degree_upper_bound(rho.ctx),
        crit_bound=_critical_from(cset),
        simplified_applicable=applicable,
        identity889_holds=(quadratic_identity_value(cset) == 0) if applicable else None,
    )


def genus_04_simplified(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM, force: bool = False):
    """Short genus formula, valid only under ``simplified_hypothesis``.

    With ``force=True`` the formula is evaluated regardless and the exact
    ``Fraction`` is returned, which is how its failure outside the
    hypothesis can be exhibited.
    """
    if not force and not simplified_hypothesis(rho):
        raise HypothesisViolation(
            f"2*lambda_i+1 <= (p^N-3)/4 fails for lambdas {rho.lambdas} at p^N={rho.ctx.modulus}"
        )
    cset = csets_04(rho, max_enum=max_enum)
    _nonempty(cset)
    value = 1 + Fraction(-3 + sum(rho.stars), 6) * cset.total - Fraction(cset.sum_star, 2)
    if force:
        return value
    if value.denominator != 1:
        raise IntegralityViolation(f"simplified genus formula gives {value}", value=value)
    return int(value)


def identity_889_check(rho: RadiiTuple4, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    if not simplified_hypothesis(rho):
        raise HypothesisViolation("identity only asserted under 2*lambda_i+1 <= (p^N-3)/4")
    return quadratic_identity_value(csets_04(rho, max_enum=max_enum)) == 0


@dataclass
class ClosedForms:
    genus99: Optional[int] = None
    count99: Optional[int] = None
    genus30: Optional[int] = None
    count30: Optional[int] = None
    skipped: dict = field(default_factory=dict)


def example_closed_forms(p: int, N: int, m: int = 1) -> ClosedForms:
    """Closed forms for the two equal-radii families.

    Family "99": all lambda_i = m(p^N-1)/(p-1), requires 8m < p-1.
    Family "30": all lambda_i = (p^N-1)/4, requires 4 | p^N-1.
    """
    PrimeLevel(p, N)
    out = ClosedForms()
    P = p**N
    if m >= 1 and 8 * m < p - 1:
        out.count99 = (2 * m + 1) ** N
        out.genus99 = 1 + (m * (P - 1) // (p - 1) - 1) * (2 * m + 1) ** N
    else:
        out.skipped["99"] = f"need 1 <= m < (p-1)/8, got m={m}, p={p}"
    if (P - 1) % 4 == 0:
        out.count30 = p ** (N - 1) * (p - 1) // 2
        g = Fraction((p - 1) * (p ** (2 * N - 1) - 6 * p ** (N - 1) - 1), 8)
        if g.denominator != 1:
            raise InputError(f"closed form not integral at p={p}, N={N}")
        out.genus30 = 1 + int(g)
    else:
        out.skipped["30"] = f"need 4 | p^N - 1, got p^N={P}"
    return out


def repunit_family_lambda(p: int, N: int, m: int) -> int:
    return m * (p**N - 1) // (p - 1)


def quarter_family_lambda(p: int, N: int) -> int:
    P = p**N
    if (P - 1) % 4:
        raise InputError("4 must divide p^N - 1")
    return (P - 1) // 4
