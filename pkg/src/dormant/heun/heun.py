"""Heun operators in characteristic p and a brute-force dormancy oracle.

The operator is
    f'' + (g/x + d/(x-1) + e/(x-t)) f' + (ab x - q) / (x(x-1)(x-t)) f
with a + b + 1 = g + d + e.  Its companion system for (f, f') is the
connection d + A dx with A = [[0, -1], [Q, P]] (so horizontal sections
solve the equation), and the operator has a full set of solutions mod p
exactly when the p-curvature of that connection vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from ..arith import PrimeLevel, RadiusClass, star_of
from ..csets import RadiiTuple4
from ..errors import DegenerateT, InfeasibleSigns, InputError, NonUnitRadius
from . import upoly
from .gf import GF, FieldElement
from .pcurv import CoeffRing, PolyMatrix, pcurvature

ALL_SIGNS = tuple(product((1, -1), repeat=4))


@dataclass(frozen=True)
class HeunParams:
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement
    delta: FieldElement
    epsilon: FieldElement
    q: FieldElement
    t: FieldElement

    def __post_init__(self):
        fields = {x.field for x in self.values()}
        if len(fields) != 1:
            raise InputError("all Heun parameters must lie in one field")
        if self.t.is_zero() or (self.t - 1).is_zero():
            raise DegenerateT("t must differ from 0 and 1")
        if not (self.alpha + self.beta + 1 - self.gamma - self.delta - self.epsilon).is_zero():
            raise InputError("Heun parameters violate alpha + beta + 1 = gamma + delta + epsilon")

    def values(self):
        return (self.alpha, self.beta, self.gamma, self.delta, self.epsilon, self.q, self.t)

    @property
    def field(self) -> GF:
        return self.t.field

    def with_q(self, q) -> "HeunParams":
        return HeunParams(self.alpha, self.beta, self.gamma, self.delta, self.epsilon, self.field(q), self.t)


@dataclass(frozen=True)
class OperInvariant:
    A2: FieldElement
    C2: FieldElement
    D2: FieldElement
    E2: FieldElement
    I: FieldElement


def accessory_shift(params: HeunParams) -> FieldElement:
    """The q-independent part c = t*g*d + g*e, so that I = 2q - c."""
    return params.t * params.gamma * params.delta + params.gamma * params.epsilon


def oper_invariant(params: HeunParams) -> OperInvariant:
    """Squared exponent differences and the accessory invariant I = 2q - t*g*d - g*e.

    I is (up to the factor -2t) the residue at 0 of the projective normal
    form q_0 = Q - P'/2 - P^2/4, which is what flipping an exponent
    (f -> x^{1-g} f and friends) leaves unchanged.
    """
    a, b, g, d, e, q = params.alpha, params.beta, params.gamma, params.delta, params.epsilon, params.q
    return OperInvariant(
        (a - b) ** 2, (1 - g) ** 2, (1 - d) ** 2, (1 - e) ** 2, 2 * q - accessory_shift(params)
    )


def heun_equiv(p1: HeunParams, p2: HeunParams) -> bool:
    """Whether two Heun operators give the same PGL2-oper on (P^1; 0, 1, inf, t)."""
    if p1.field != p2.field:
        raise InputError("parameters over different fields")
    if p1.t != p2.t:
        raise InputError("operators on different pointed lines (t differs)")
    return oper_invariant(p1) == oper_invariant(p2)


def heun_radii(params: HeunParams) -> tuple:
    """Radii at (0, 1, t, inf): classes of (1-g)/2, (1-d)/2, (1-e)/2, (a-b)/2."""
    p = params.field.p
    ctx = PrimeLevel(p, 1)
    half = (p + 1) // 2
    out = []
    for label, v in (
        ("0", 1 - params.gamma),
        ("1", 1 - params.delta),
        ("t", 1 - params.epsilon),
        ("inf", params.alpha - params.beta),
    ):
        if not v.in_prime_field():
            raise InputError(f"radius at {label} needs prime-field exponents")
        r = int(v) * half % p
        if r == 0:
            raise NonUnitRadius(f"exponent difference at {label} vanishes mod {p}")
        out.append(RadiusClass(ctx, r))
    return tuple(out)


def _ring_for(field: GF) -> CoeffRing:
    return CoeffRing(field.p, field.modulus if field.e > 1 else None)


def _den(ring: CoeffRing, t_vec):
    # m(x) = x(x-1)(x-t) = x^3 - (1+t) x^2 + t x
    p = ring.p
    one = [1]
    t = list(t_vec)
    one_plus_t = [(t[0] + 1) % p] + t[1:]
    return ring.from_x_coeffs([[0], t, [(-c) % p for c in one_plus_t], one])


def _companion(ring, g, d, e, ab, q, t) -> PolyMatrix:
    """Companion connection with coefficient vectors g, d, e, ab, q, t."""
    p = ring.p
    m = _den(ring, t)
    X = ring.from_x_coeffs([[0], [1]])
    one = ring.const([1])
    Xm1 = ring.sub(X, one)
    Xmt = ring.sub(X, ring.const(t))
    P_num = ring.add(
        ring.add(
            ring.mul(ring.const(g), ring.mul(Xm1, Xmt)),
            ring.mul(ring.const(d), ring.mul(X, Xmt)),
        ),
        ring.mul(ring.const(e), ring.mul(X, Xm1)),
    )
    Q_num = ring.sub(ring.mul(ring.const(ab), X), ring.const(q))
    M = [[ring.zero(), ring.scale(m, -1)], [Q_num, P_num]]
    return PolyMatrix(ring, M, m, 1)


def companion_connection(params: HeunParams) -> PolyMatrix:
    ring = _ring_for(params.field)
    v = lambda x: list(x.coeffs)  # noqa: E731
    return _companion(
        ring,
        v(params.gamma),
        v(params.delta),
        v(params.epsilon),
        v(params.alpha * params.beta),
        v(params.q),
        v(params.t),
    )


def is_dormant_heun(params: HeunParams) -> bool:
    return pcurvature(companion_connection(params)).is_zero()


def projective_pcurvature_scalar(params: HeunParams) -> bool:
    """Secondary diagnostic: is the p-curvature a scalar matrix (PGL2 flatness)?"""
    psi = pcurvature(companion_connection(params))
    ring = psi.ring
    (a, b), (c, d) = psi.num
    return b.shape[0] == 0 and c.shape[0] == 0 and ring.sub(a, d).shape[0] == 0


def params_from_radii(field: GF, t, radii: RadiiTuple4, signs, q=0) -> HeunParams:
    """Heun parameters realising ``radii`` at (0, 1, t, inf) with sign choices.

    Exponent differences are +-(rho_i^star): 1-g, 1-d, 1-e and a-b.
    """
    if radii.ctx.N != 1 or radii.ctx.p != field.p:
        raise InputError("Heun radii must be level-1 classes for the same prime")
    if len(signs) != 4 or any(s not in (1, -1) for s in signs):
        raise InfeasibleSigns(f"bad sign choice {signs}")
    diffs = [field(s * x) for s, x in zip(signs, radii.stars)]
    g, d, e = 1 - diffs[0], 1 - diffs[1], 1 - diffs[2]
    total = g + d + e - 1  # alpha + beta
    alpha = (total + diffs[3]) / 2
    beta = (total - diffs[3]) / 2
    return HeunParams(alpha, beta, g, d, e, field(q), field(t))


def _check_t(p: int, t: int) -> int:
    t %= p
    if t in (0, 1):
        raise DegenerateT(f"t = {t} is degenerate")
    return t


def dormancy_polynomial(t: int, radii: RadiiTuple4, signs) -> tuple:
    """Monic generator of the ideal of accessory parameters q with vanishing p-curvature.

    The p-curvature is computed with q as an indeterminate; its entries are
    polynomials in x with coefficients in F_p[q], and the answer is the gcd
    of all those coefficients.  ``()`` (the zero polynomial) would mean every
    q is dormant.
    """
    p = radii.ctx.p
    t = _check_t(p, t)
    field = GF(p)
    base = params_from_radii(field, t, radii, signs)
    ring = CoeffRing(p, None)
    A = _companion(
        ring,
        [int(base.gamma)],
        [int(base.delta)],
        [int(base.epsilon)],
        [int(base.alpha * base.beta)],
        [0, 1],
        [t],
    )
    psi = pcurvature(A)
    coeffs = []
    for entry in psi.entries():
        for row in entry:
            coeffs.append(upoly.trim(row.tolist(), p))
    return upoly.gcd_many(coeffs, p)


def invariant_polynomial(t: int, radii: RadiiTuple4, signs) -> tuple:
    """Radical of the dormancy polynomial rewritten in I = 2q - t*g*d - g*e."""
    p = radii.ctx.p
    f = dormancy_polynomial(t, radii, signs)
    if not f:
        raise InputError("every accessory parameter is dormant; p-curvature identically zero")
    base = params_from_radii(GF(p), t, radii, signs)
    c = int(accessory_shift(base))
    half = (p + 1) // 2
    # q = (I + c)/2
    h = upoly.affine_substitute(f, half, (c * half) % p, p)
    return upoly.radical(h, p)


@dataclass
class OperCount:
    t: int
    count: int
    invariant_poly: tuple
    per_signs: dict


def count_dormant_opers_detail(t: int, radii: RadiiTuple4) -> OperCount:
    p = radii.ctx.p
    t = _check_t(p, t)
    union = (1,)
    per = {}
    seen = {}
    for signs in ALL_SIGNS:
        base = params_from_radii(GF(p), t, radii, signs)
        key = (base.gamma, base.delta, base.epsilon, base.alpha * base.beta)
        if key not in seen:
            seen[key] = invariant_polynomial(t, radii, signs)
        h = seen[key]
        per[signs] = upoly.degree(h)
        union = upoly.lcm(union, h, p)
    return OperCount(t, upoly.degree(union), union, per)


def count_dormant_opers(t: int, radii: RadiiTuple4) -> int:
    """Number of dormant PGL2-opers with these radii on (P^1; 0, 1, inf, t) over F_p-bar."""
    return count_dormant_opers_detail(t, radii).count


def scan_dormant_q(field: GF, t, radii: RadiiTuple4, signs) -> list:
    """Every q in ``field`` whose Heun operator has vanishing p-curvature (slow path)."""
    base = params_from_radii(field, t, radii, signs)
    return [q for q in field.elements() if is_dormant_heun(base.with_q(q))]


def max_count_over_t(radii: RadiiTuple4) -> tuple:
    p = radii.ctx.p
    counts = {t: count_dormant_opers(t, radii) for t in range(2, p)}
    return max(counts.values()), counts


def radii_for_heun(p: int, reps) -> RadiiTuple4:
    return RadiiTuple4.from_reps(PrimeLevel(p, 1), reps)


def doubled_reps(radii: RadiiTuple4) -> tuple:
    return tuple(star_of(radii.ctx, r) for r in radii.reps)
