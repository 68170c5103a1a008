import pytest
from hypothesis import assume, given, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_div, gf_gcd, gf_irreducible_p, gf_lcm, gf_mul, gf_sqf_part

from dormant.errors import InputError
from dormant.heun import upoly
from dormant.heun.gf import GF, default_modulus, is_irreducible

PRIMES = [3, 5, 7, 11]


def to_sympy(f):
    return [int(c) for c in reversed(f)]


def from_sympy(f, p):
    return upoly.trim([int(c) for c in reversed(f)], p)


@st.composite
def polys(draw, p, max_deg=8):
    coeffs = draw(st.lists(st.integers(0, p - 1), max_size=max_deg + 1))
    return upoly.trim(coeffs, p)


@st.composite
def prime_and_polys(draw, n=2):
    p = draw(st.sampled_from(PRIMES))
    return (p,) + tuple(draw(polys(p)) for _ in range(n))


@given(prime_and_polys())
def test_mul_matches_sympy(args):
    p, f, g = args
    assert upoly.mul(f, g, p) == from_sympy(gf_mul(to_sympy(f), to_sympy(g), p, ZZ), p)


@given(prime_and_polys())
def test_divmod_matches_sympy(args):
    p, f, g = args
    assume(g)
    q, r = upoly.divmod_(f, g, p)
    sq, sr = gf_div(to_sympy(f), to_sympy(g), p, ZZ)
    assert (q, r) == (from_sympy(sq, p), from_sympy(sr, p))
    assert upoly.add(upoly.mul(q, g, p), r, p) == f


@given(prime_and_polys())
def test_gcd_lcm_match_sympy(args):
    p, f, g = args
    assume(f and g)
    assert upoly.gcd(f, g, p) == from_sympy(gf_gcd(to_sympy(f), to_sympy(g), p, ZZ), p)
    assert upoly.lcm(f, g, p) == from_sympy(gf_lcm(to_sympy(f), to_sympy(g), p, ZZ), p)


@given(prime_and_polys(n=1))
def test_radical_matches_sympy(args):
    p, f = args
    assume(f)
    assert upoly.radical(f, p) == from_sympy(gf_sqf_part(to_sympy(upoly.monic(f, p)), p, ZZ), p)


def test_radical_inseparable_case():
    p = 5
    f = upoly.mul(upoly.trim([1, 0, 0, 0, 0, 1], p), (2, 1), p)  # (x^5 + 1)(x + 2)
    assert upoly.radical(f, p) == upoly.lcm((1, 1), (2, 1), p)
    with pytest.raises(ValueError):
        upoly.radical((), p)


@given(prime_and_polys(n=1), st.integers(0, 10), st.integers(0, 10), st.integers(0, 10))
def test_affine_substitute(args, a, b, x):
    p, f = args
    g = upoly.affine_substitute(f, a, b, p)
    assert upoly.evaluate(g, x, p) == upoly.evaluate(f, (a * x + b) % p, p)


def test_gcd_many_and_roots():
    p = 7
    f = upoly.mul((1, 1), (5, 1), p)  # (x+1)(x+5)
    g = upoly.mul((1, 1), (3, 1), p)
    assert upoly.gcd_many([(), f, g], p) == (1, 1)
    assert upoly.gcd_many([(), ()], p) == ()
    assert upoly.roots_in_prime_field(f, p) == [2, 6]


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("e", [1, 2, 3])
def test_default_modulus_irreducible(p, e):
    f = default_modulus(p, e)
    assert len(f) == e + 1 and f[-1] == 1
    assert is_irreducible(f, p)
    assert gf_irreducible_p(to_sympy(f), p, ZZ)


def test_is_irreducible_against_sympy():
    import itertools

    for p in (3, 5):
        for e in (2, 3, 4):
            for low in itertools.product(range(p), repeat=e):
                f = tuple(low) + (1,)
                assert is_irreducible(f, p) == bool(gf_irreducible_p(to_sympy(f), p, ZZ))


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (7, 2), (3, 3)])
def test_field_axioms(p, e):
    F = GF(p, e)
    elems = list(F.elements())
    assert len(elems) == F.order == len(set(elems))
    zero, one = F(0), F(1)
    nonzero = [x for x in elems if not x.is_zero()]
    for x in nonzero:
        assert x * x.inverse() == one
        assert x ** (F.order - 1) == one
    g = F.gen()
    for x in elems[:10]:
        for y in elems[-10:]:
            assert (x + y) - y == x
            assert x * (y + g) == x * y + x * g
            if not y.is_zero():
                assert (x / y) * y == x
    assert zero + one == one and -one + one == zero


def test_prime_field_elements():
    F = GF(11)
    assert int(F(3) / F(2)) == 7
    assert int(2 - F(5)) == 8
    assert F(4).in_prime_field()
    assert not GF(11, 2).gen().in_prime_field()
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    with pytest.raises(InputError):
        int(GF(11, 2).gen())
    with pytest.raises(InputError):
        GF(11)(1) + GF(13)(1)
    with pytest.raises(InputError):
        GF(11).gen()
    with pytest.raises(InputError):
        GF(15)
