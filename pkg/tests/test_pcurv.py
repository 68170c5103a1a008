import random

import numpy as np
import pytest
from sympy import GF as SymGF
from sympy.polys.fields import field

from dormant.heun.pcurv import CoeffRing, PolyMatrix, pcurvature


def rand_poly(rng, p, deg):
    return [rng.randrange(p) for _ in range(deg + 1)]


def reference_pcurvature(p, M, m):
    """Apply (d/dx + A) p times to the identity with exact rational functions."""
    K, x = field("x", SymGF(p))

    def lift(coeffs):
        return sum((int(c) * x**i for i, c in enumerate(coeffs)), K(0))

    den = lift(m)
    A = [[lift(M[i][j]) / den for j in range(2)] for i in range(2)]
    B = [[K(1), K(0)], [K(0), K(1)]]
    for _ in range(p):
        B = [
            [B[i][j].diff(x) + A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)]
            for i in range(2)
        ]
    return B, lift, K


def as_rational(ring, entry, m, k, lift):
    return lift(entry[:, 0].tolist() if entry.shape[0] else []) / lift(m) ** k


@pytest.mark.parametrize("p", [3, 5, 7])
def test_pcurvature_matches_reference(p):
    rng = random.Random(p)
    ring = CoeffRing(p)
    for _ in range(6):
        m = rand_poly(rng, p, rng.randrange(0, 3)) + [1]
        M = [[rand_poly(rng, p, rng.randrange(0, 4)) for _ in range(2)] for _ in range(2)]
        A = PolyMatrix(ring, [[ring.from_x_coeffs([[c] for c in e]) for e in row] for row in M],
                       ring.from_x_coeffs([[c] for c in m]))
        psi = pcurvature(A)
        B, lift, K = reference_pcurvature(p, M, m)
        for i in range(2):
            for j in range(2):
                assert as_rational(ring, psi.num[i][j], m, p, lift) == B[i][j]


def test_zero_connection():
    ring = CoeffRing(5)
    Z = ring.zero()
    psi = pcurvature(PolyMatrix(ring, [[Z, Z], [Z, Z]], ring.const([1])))
    assert psi.is_zero()


@pytest.mark.parametrize("p,c", [(5, 3), (7, 2), (11, 6)])
def test_constant_diagonal(p, c):
    ring = CoeffRing(p)
    Z = ring.zero()
    psi = pcurvature(PolyMatrix(ring, [[ring.const([c]), Z], [Z, Z]], ring.const([1])))
    assert np.array_equal(psi.num[0][0], ring.const([pow(c, p, p)]))
    assert psi.num[0][1].shape[0] == psi.num[1][0].shape[0] == psi.num[1][1].shape[0] == 0
    assert psi.k == p


def test_extension_ring_embeds_prime_field():
    p = 5
    rng = random.Random(1)
    base = CoeffRing(p)
    ext = CoeffRing(p, (1, 1, 1))
    m = [0, 2, 4, 1]
    M = [[rand_poly(rng, p, 2) for _ in range(2)] for _ in range(2)]
    res = []
    for ring in (base, ext):
        A = PolyMatrix(ring, [[ring.from_x_coeffs([[c] for c in e]) for e in row] for row in M],
                       ring.from_x_coeffs([[c] for c in m]))
        res.append(pcurvature(A))
    for a, b in zip(res[0].entries(), res[1].entries()):
        assert np.array_equal(a, b)


def test_ring_reduction_in_extension():
    ring = CoeffRing(5, (1, 1, 1))  # z^2 = -z - 1
    z = ring.const([0, 1])
    assert np.array_equal(ring.mul(z, z), ring.const([4, 4]))
    assert np.array_equal(ring.mul(ring.mul(z, z), z), ring.const([1]))  # z^3 = 1
