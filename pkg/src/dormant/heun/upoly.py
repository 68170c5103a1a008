"""Dense univariate polynomials over F_p.

A polynomial is a tuple of ints in ``range(p)``, lowest degree first, with
no trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def trim(f: Iterable[int], p: int) -> tuple:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Sequence[int]) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim(
        [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p
    )


def sub(f, g, p):
    return add(f, scale(g, -1, p), p)


def scale(f, c, p):
    return trim([c * a for a in f], p)


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            q[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = (f[i - dg + j] - c * b) % p
    return trim(q, p), trim(f[:dg], p)


def monic(f, p):
    if not f:
        return ()
    return scale(f, pow(f[-1], p - 2, p), p)


def gcd(f, g, p):
    f, g = trim(f, p), trim(g, p)
    while g:
        f, g = g, divmod_(f, g, p)[1]
    return monic(f, p)


def gcd_many(polys, p):
    out = ()
    for f in polys:
        out = gcd(out, f, p)
        if out == (1,):
            break
    return out


def lcm(f, g, p):
    if not f or not g:
        return ()
    return monic(divmod_(mul(f, g, p), gcd(f, g, p), p)[0], p)


def deriv(f, p):
    return trim([i * f[i] for i in range(1, len(f))], p)


def pth_root(f, p):
    """For f with f' = 0 over F_p, the g with g^p = f."""
    return trim(f[::p], p)


def radical(f, p):
    """Product of the distinct monic irreducible factors of f (f nonzero)."""
    f = monic(trim(f, p), p)
    if not f:
        raise ValueError("radical of the zero polynomial")
    if len(f) == 1:
        return (1,)
    d = deriv(f, p)
    if not d:
        return radical(pth_root(f, p), p)
    g = gcd(f, d, p)
    w = divmod_(f, g, p)[0]
    if len(g) == 1:
        return monic(w, p)
    return lcm(monic(w, p), radical(g, p), p)


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def affine_substitute(f, a, b, p):
    """The polynomial x -> f(a*x + b)."""
    out = ()
    lin = trim([b, a], p)
    for c in reversed(f):
        out = add(mul(out, lin, p), (c,), p)
    return out


def roots_in_prime_field(f, p):
    return [x for x in range(p) if evaluate(f, x, p) == 0]
