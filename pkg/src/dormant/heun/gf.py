"""Finite fields F_{p^e} as F_p[z]/(f) with a fixed monic irreducible f."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from ..arith import is_prime
from ..errors import InputError
from . import upoly


def is_irreducible(f: tuple, p: int) -> bool:
    """Rabin-style test: f of degree e is irreducible iff it shares no factor
    with z^{p^i} - z for i <= e/2 (enough for the small e used here)."""
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    power = (0, 1)
    for _ in range(e // 2):
        power = _powmod(power, p, f, p)
        if len(upoly.gcd(upoly.sub(power, (0, 1), p), f, p)) > 1:
            return False
    return True


def _powmod(base, k, mod, p):
    result = (1,)
    base = upoly.divmod_(base, mod, p)[1]
    while k:
        if k & 1:
            result = upoly.divmod_(upoly.mul(result, base, p), mod, p)[1]
        base = upoly.divmod_(upoly.mul(base, base, p), mod, p)[1]
        k >>= 1
    return result


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple:
    """Lexicographically first monic irreducible of degree e."""
    if e == 1:
        return (0, 1)
    for low in product(range(p), repeat=e):
        f = tuple(low) + (1,)
        if f[0] and is_irreducible(f, p):
            return f
    raise InputError(f"no irreducible of degree {e} over F_{p}")


@dataclass(frozen=True)
class GF:
    p: int
    e: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.e < 1:
            raise InputError("extension degree must be >= 1")

    @property
    def modulus(self) -> tuple:
        return default_modulus(self.p, self.e)

    @property
    def order(self) -> int:
        return self.p**self.e

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InputError("element from a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.e - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.e:
            raise InputError("too many coordinates")
        return FieldElement(self, coeffs + (0,) * (self.e - len(coeffs)))

    def gen(self) -> "FieldElement":
        if self.e == 1:
            raise InputError("the prime field has no adjoined generator")
        return self((0, 1))

    def elements(self) -> Iterator["FieldElement"]:
        for c in product(range(self.p), repeat=self.e):
            yield FieldElement(self, tuple(reversed(c)))


@dataclass(frozen=True)
class FieldElement:
    field: GF
    coeffs: tuple

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InputError("mixing elements of different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def _from_poly(self, poly):
        c = upoly.divmod_(poly, self.field.modulus, self.field.p)[1] if self.field.e > 1 else poly
        c = tuple(c) + (0,) * (self.field.e - len(c))
        return FieldElement(self.field, c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return self._from_poly(upoly.mul(upoly.trim(self.coeffs, p), upoly.trim(other.coeffs, p), p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self):
        if not self.in_prime_field():
            raise InputError(f"{self} is not in the prime field")
        return self.coeffs[0]

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.coeffs[0]}"
        terms = [f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"
