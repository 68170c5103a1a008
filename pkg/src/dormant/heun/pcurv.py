"""p-curvature of rank-2 connections d + A dx over F_p[z]/(f)(x).

Polynomials in x are 2-D integer arrays ``a[i, j]`` = coefficient of
``x^i z^j``.  The coefficient ring is F_p[z]/(f) for a monic irreducible
f (then it is the field F_{p^e}) or the free ring F_p[z] when f is None,
which is how an indeterminate accessory parameter is carried.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class CoeffRing:
    p: int
    modulus: Optional[tuple] = None  # monic, lowest degree first

    def reduce(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64) % self.p
        if self.modulus is not None:
            e = len(self.modulus) - 1
            low = np.asarray(self.modulus[:-1], dtype=np.int64)
            for j in range(a.shape[1] - 1, e - 1, -1):
                col = a[:, j]
                if col.any():
                    a[:, j - e : j] = (a[:, j - e : j] - np.outer(col, low)) % self.p
            a = a[:, : max(e, 1)]
        return _trim(a)

    def zero(self) -> np.ndarray:
        return np.zeros((0, 1), dtype=np.int64)

    def const(self, coeffs) -> np.ndarray:
        """Degree-0 polynomial in x with the given z-coefficients."""
        return self.reduce(np.asarray([list(coeffs)], dtype=np.int64))

    def from_x_coeffs(self, coeffs) -> np.ndarray:
        """Polynomial sum_i c_i x^i where each c_i is a z-coefficient vector."""
        width = max((len(c) for c in coeffs), default=1)
        a = np.zeros((len(coeffs), max(width, 1)), dtype=np.int64)
        for i, c in enumerate(coeffs):
            a[i, : len(c)] = c
        return self.reduce(a)

    def add(self, a, b):
        return self.reduce(_pad_add(a, b, 1))

    def sub(self, a, b):
        return self.reduce(_pad_add(a, b, -1))

    def scale(self, a, c: int):
        return self.reduce(a * (c % self.p))

    def mul(self, a, b):
        if a.shape[0] == 0 or b.shape[0] == 0:
            return self.zero()
        if np.count_nonzero(a) > np.count_nonzero(b):
            a, b = b, a
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=np.int64)
        rb, cb = b.shape
        for i, j in zip(*np.nonzero(a)):
            out[i : i + rb, j : j + cb] += a[i, j] * b
        return self.reduce(out)

    def deriv(self, a):
        if a.shape[0] <= 1:
            return self.zero()
        k = np.arange(1, a.shape[0], dtype=np.int64)[:, None]
        return self.reduce(a[1:] * k)


def _trim(a: np.ndarray) -> np.ndarray:
    rows = np.nonzero(a.any(axis=1))[0]
    if rows.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 and a.shape[1] else 1), dtype=np.int64)
    a = a[: rows[-1] + 1]
    cols = np.nonzero(a.any(axis=0))[0]
    return a[:, : max(cols[-1] + 1, 1)]


def _pad_add(a, b, sign):
    r = max(a.shape[0], b.shape[0])
    c = max(a.shape[1], b.shape[1])
    out = np.zeros((r, c), dtype=np.int64)
    out[: a.shape[0], : a.shape[1]] += a
    out[: b.shape[0], : b.shape[1]] += sign * b
    return out


def is_zero_poly(a) -> bool:
    return a.shape[0] == 0


@dataclass
class PolyMatrix:
    """The 2x2 matrix ``num / den^k`` with polynomial entries in x."""

    ring: CoeffRing
    num: list  # [[a00, a01], [a10, a11]]
    den: np.ndarray
    k: int = 1

    def is_zero(self) -> bool:
        return all(is_zero_poly(e) for row in self.num for e in row)

    def entries(self):
        for row in self.num:
            yield from row


def matmul(ring: CoeffRing, A, B):
    return [
        [ring.add(ring.mul(A[i][0], B[0][j]), ring.mul(A[i][1], B[1][j])) for j in range(2)]
        for i in range(2)
    ]


def pcurvature(A: PolyMatrix) -> PolyMatrix:
    """p-curvature of d + A dx where A = M / m.

    With A_k = N_k / m^k the matrix of (d/dx + A)^k on constant sections,
    N_1 = M and N_{k+1} = N_k' m - k N_k m' + M N_k; the result is N_p / m^p.
    """
    if A.k != 1:
        raise ValueError("pcurvature expects the connection matrix as M / m")
    ring = A.ring
    p = ring.p
    m = A.den
    dm = ring.deriv(m)
    M = A.num
    Nk = [row[:] for row in M]
    for k in range(1, p):
        prod = matmul(ring, M, Nk)
        Nk = [
            [
                ring.add(
                    ring.sub(ring.mul(ring.deriv(Nk[i][j]), m), ring.scale(ring.mul(Nk[i][j], dm), k)),
                    prod[i][j],
                )
                for j in range(2)
            ]
            for i in range(2)
        ]
    return PolyMatrix(ring, Nk, m, p)
