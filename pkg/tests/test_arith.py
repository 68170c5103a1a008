import pytest
from hypothesis import given, strategies as st

from dormant.arith import (
    EdgeLabel,
    PrimeLevel,
    RadiusClass,
    bracket,
    delta,
    delta_inv,
    digits,
    edge_labels,
    is_edge_label,
    radius_classes,
    rho_star,
    unit_fold,
)
from dormant.errors import InputError

SMALL = [(p, N) for p in (3, 5, 7, 11, 13) for N in (1, 2, 3)]


@st.composite
def levels(draw, primes=(3, 5, 7, 11, 13), max_N=3):
    return PrimeLevel(draw(st.sampled_from(primes)), draw(st.integers(1, max_N)))


@st.composite
def labels(draw):
    ctx = draw(levels())
    s = draw(st.integers(0, (ctx.modulus - 3) // 2).filter(lambda a: is_edge_label(ctx, a)))
    return EdgeLabel(ctx, s)


def test_prime_level_validation():
    with pytest.raises(InputError):
        PrimeLevel(2, 1)
    with pytest.raises(InputError):
        PrimeLevel(9, 1)
    with pytest.raises(InputError):
        PrimeLevel(5, 0)
    assert PrimeLevel(11, 2).modulus == 121


def test_big_levels_do_not_overflow():
    ctx = PrimeLevel(13, 40)
    assert ctx.modulus == 13**40
    rho = RadiusClass(ctx, 3)
    assert delta(delta_inv(rho)) == rho


@pytest.mark.parametrize("a,M,p,want", [(0, 1, 11, 0), (3, 1, 11, 3), (9, 1, 11, 1)])
def test_bracket_examples(a, M, p, want):
    assert bracket(a, M, p) == want


def test_bracket_matches_displayed_formula():
    for p in (5, 7, 11):
        for M in (1, 2):
            P = p**M
            for a in range(3 * P):
                r = a - P * (a // P)
                assert bracket(a, M, p) == (P - 1) // 2 - abs(r - (P - 1) // 2)


@pytest.mark.parametrize(
    "a,p,N,want", [(3, 11, 1, 3), (42, 11, 1, 2), (121 - 3, 11, 2, 3)]
)
def test_unit_fold_examples(a, p, N, want):
    assert unit_fold(a, PrimeLevel(p, N)) == want


def test_unit_fold_rejects_non_units():
    with pytest.raises(InputError):
        unit_fold(22, PrimeLevel(11, 1))


def test_delta_examples():
    assert delta(EdgeLabel(PrimeLevel(11, 1), 3)).rep == 2
    assert delta(EdgeLabel(PrimeLevel(5, 1), 0)).rep == 2
    # 3/2 mod 121 is 3*61 = 183 = 62, which folds to 121 - 62 = 59
    assert delta(EdgeLabel(PrimeLevel(11, 2), 1)).rep == 59
    assert (2 * 59) % 121 in (3, 121 - 3)


def test_delta_inv_examples():
    assert int(delta_inv(RadiusClass(PrimeLevel(11, 1), 2))) == 3
    assert int(delta_inv(RadiusClass(PrimeLevel(5, 1), 2))) == 0
    one = RadiusClass(PrimeLevel(11, 1), 1)
    assert delta(delta_inv(one)) == one


@pytest.mark.parametrize("rep,want", [(1, 2), (3, 5), (5, 1)])
def test_rho_star_reference_tuple(rep, want):
    assert rho_star(RadiusClass(PrimeLevel(11, 1), rep)) == want


def test_edge_label_rejects_bad_values():
    ctx = PrimeLevel(11, 1)
    with pytest.raises(InputError):
        EdgeLabel(ctx, 5)  # congruent to (p-1)/2
    with pytest.raises(InputError):
        EdgeLabel(ctx, 5 * 11)
    with pytest.raises(InputError):
        delta(EdgeLabel(ctx, -1))


def test_radius_class_normalizes():
    ctx = PrimeLevel(11, 2)
    assert RadiusClass(ctx, 118).rep == 3
    assert RadiusClass(ctx, 118) == RadiusClass(ctx, 3)
    with pytest.raises(InputError):
        RadiusClass(ctx, 33)


@pytest.mark.parametrize("p,N", SMALL)
def test_edge_label_count(p, N):
    ctx = PrimeLevel(p, N)
    labs = list(edge_labels(ctx))
    assert len(labs) == (p - 1) * p ** (N - 1) // 2 == ctx.num_classes
    assert len(list(radius_classes(ctx))) == len(labs)
    assert sorted(delta(EdgeLabel(ctx, s)).rep for s in labs) == [c.rep for c in radius_classes(ctx)]


@given(labels())
def test_delta_round_trip(s):
    assert delta_inv(delta(s)) == s


@given(levels(), st.data())
def test_delta_inv_round_trip(ctx, data):
    rep = data.draw(st.integers(1, (ctx.modulus - 1) // 2).filter(lambda r: r % ctx.p))
    rho = RadiusClass(ctx, rep)
    assert delta(delta_inv(rho)) == rho


@given(levels(), st.data())
def test_rho_star_properties(ctx, data):
    rep = data.draw(st.integers(1, (ctx.modulus - 1) // 2).filter(lambda r: r % ctx.p))
    rho = RadiusClass(ctx, rep)
    P = ctx.modulus
    star = rho_star(rho)
    assert star % ctx.p and 1 <= star <= (P - 1) // 2
    assert RadiusClass(ctx, star * (P + 1) // 2 % P) == rho
    flipped = RadiusClass(ctx, P - rep)
    assert rho_star(flipped) * (P - rho_star(flipped)) == star * (P - star)
    s = int(delta_inv(rho))
    if 2 * s + 1 <= (P - 1) // 2:
        assert star == 2 * s + 1


@given(st.integers(0, 10**6), st.integers(1, 3), st.sampled_from([3, 5, 7, 11]))
def test_bracket_periodic(a, M, p):
    P = p**M
    assert bracket(a, M, p) == bracket(a % P, M, p)
    if a < P:
        assert bracket(a, M, p) == min(a, P - 1 - a)


def test_digits():
    assert digits(3 + 3 * 13 + 3 * 169, 13, 3) == [3, 3, 3]
    assert digits(5, 7, 3) == [5, 0, 0]
