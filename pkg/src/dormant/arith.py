"""Residue arithmetic modulo p^N: folds, radius classes and edge labels.

Radius classes live in (Z/p^N)^x / {+-1}; each is stored by its folded
representative in ``1..(p^N-1)/2``.  Edge labels are the integers of
``B_N = {0 <= a <= (p^N-3)/2 : a != (p-1)/2 mod p}``, and ``delta`` maps a
label ``s`` to the class of ``(2s+1)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator

from .errors import InputError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeLevel:
    p: int
    N: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.N, int):
            raise InputError("p and N must be integers")
        if self.p < 3 or not is_prime(self.p):
            raise InputError(f"p must be an odd prime, got {self.p}")
        if self.N < 1:
            raise InputError(f"level N must be >= 1, got {self.N}")

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def half(self) -> int:
        """Inverse of 2 modulo p^N."""
        return (self.modulus + 1) // 2

    @property
    def num_classes(self) -> int:
        """Cardinality of (Z/p^N)^x/{+-1}, which equals that of B_N."""
        return (self.p - 1) * self.p ** (self.N - 1) // 2

    def at_level(self, N: int) -> "PrimeLevel":
        return PrimeLevel(self.p, N)


def bracket(a: int, M: int, p: int) -> int:
    """The fold ``[a]_M``: with r = a mod p^M, return min(r, p^M - 1 - r)."""
    if M < 1 or a < 0:
        raise InputError("bracket needs M >= 1 and a >= 0")
    P = p**M
    r = a % P
    return min(r, P - 1 - r)


def unit_fold(a: int, ctx: PrimeLevel) -> int:
    """Canonical representative in 1..(p^N-1)/2 of the class of a unit a."""
    if a % ctx.p == 0:
        raise InputError(f"{a} is not a unit modulo {ctx.p}")
    P = ctx.modulus
    r = a % P
    return min(r, P - r)


@dataclass(frozen=True, order=True)
class RadiusClass:
    ctx: PrimeLevel
    rep: int

    def __post_init__(self):
        if not isinstance(self.rep, int):
            raise InputError("radius representative must be an integer")
        object.__setattr__(self, "rep", unit_fold(self.rep, self.ctx))

    @property
    def star(self) -> int:
        return rho_star(self)

    def reduce(self, N: int) -> "RadiusClass":
        """Image under (Z/p^M)^x/{+-1} -> (Z/p^N)^x/{+-1} for N <= M."""
        if N > self.ctx.N:
            raise InputError("can only reduce to a lower level")
        return RadiusClass(self.ctx.at_level(N), self.rep)

    def __str__(self):
        return f"{self.rep}bar"


def is_edge_label(ctx: PrimeLevel, a: int) -> bool:
    return 0 <= a <= (ctx.modulus - 3) // 2 and a % ctx.p != (ctx.p - 1) // 2


@dataclass(frozen=True, order=True)
class EdgeLabel:
    ctx: PrimeLevel
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or not is_edge_label(self.ctx, self.value):
            raise InputError(
                f"{self.value} is not in B_{self.ctx.N} for p={self.ctx.p}"
            )

    def __int__(self):
        return self.value


def edge_labels(ctx: PrimeLevel) -> Iterator[int]:
    bad = (ctx.p - 1) // 2
    for a in range((ctx.modulus - 3) // 2 + 1):
        if a % ctx.p != bad:
            yield a


def radius_classes(ctx: PrimeLevel) -> Iterator[RadiusClass]:
    for r in range(1, (ctx.modulus - 1) // 2 + 1):
        if r % ctx.p:
            yield RadiusClass(ctx, r)


def delta_rep(ctx: PrimeLevel, s: int) -> int:
    return unit_fold((2 * s + 1) * ctx.half, ctx)


def delta_inv_rep(ctx: PrimeLevel, rep: int) -> int:
    P = ctx.modulus
    u = (2 * rep) % P
    v = u if u % 2 else P - u
    return (v - 1) // 2


def delta(s: EdgeLabel) -> RadiusClass:
    return RadiusClass(s.ctx, delta_rep(s.ctx, s.value))


def delta_inv(rho: RadiusClass) -> EdgeLabel:
    return EdgeLabel(rho.ctx, delta_inv_rep(rho.ctx, rho.rep))


def star_of(ctx: PrimeLevel, rep: int) -> int:
    return unit_fold(2 * rep, ctx)


def rho_star(rho: RadiusClass) -> int:
    """The representative ``x`` in 1..(p^N-1)/2 with class(x/2) == rho."""
    return star_of(rho.ctx, rho.rep)


def digits(a: int, p: int, n: int) -> list[int]:
    """The first n base-p digits of a nonnegative integer, least significant first."""
    out = []
    for _ in range(n):
        a, d = divmod(a, p)
        out.append(d)
    return out


def coprime(a: int, p: int) -> bool:
    return gcd(a, p) == 1
