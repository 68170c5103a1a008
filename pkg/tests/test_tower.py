from fractions import Fraction

import pytest

from dormant.arith import PrimeLevel, RadiusClass, delta, EdgeLabel
from dormant.csets import RadiiTuple4, csets_04
from dormant.errors import EmptyModuli, InputError, MembershipFailure
from dormant.tower import (
    PadicRadiusSpec,
    alpha_goodness_certificate,
    p_lower_bound,
    ratio_at_least,
    ratio_decimal,
    ratio_ge_ratio,
    tower_report,
    truncate_radii,
)

QUARTER = [Fraction(-1, 4)] * 4


def test_truncate_rational():
    spec = PadicRadiusSpec.rational(13, QUARTER)
    rho = truncate_radii(spec, 1)
    assert rho.reps == (3, 3, 3, 3)
    assert rho.rho[0] == delta(EdgeLabel(PrimeLevel(13, 1), 3))
    for N in (2, 3):
        lam = (13**N - 1) // 4
        assert truncate_radii(spec, N).lambdas == (lam,) * 4


def test_truncate_constant():
    spec = PadicRadiusSpec.constant(11, (1, 1, 1, 1))
    rho = truncate_radii(spec, 3)
    assert rho.ctx == PrimeLevel(11, 3)
    assert rho.rho[0] == delta(EdgeLabel(PrimeLevel(11, 3), 1))
    with pytest.raises(InputError):
        truncate_radii(PadicRadiusSpec.constant(13, (100,) * 4), 1)


@pytest.mark.parametrize(
    "spec",
    [
        PadicRadiusSpec.rational(13, QUARTER),
        PadicRadiusSpec.rational(11, [Fraction(2, 3), Fraction(-5, 7), Fraction(1, 2), Fraction(9)]),
        PadicRadiusSpec.constant(7, (1, 2, 0, 1)),
        PadicRadiusSpec.digit_stream(5, [[1, 2, 3, 4, 0], [2, 2, 2, 2, 2], [4, 0, 1, 3, 3], [3, 3, 3, 3, 3]]),
    ],
)
def test_truncations_compatible(spec):
    for N in range(1, 4):
        hi, lo = truncate_radii(spec, N + 1), truncate_radii(spec, N)
        assert tuple(r.reduce(N) for r in hi.rho) == lo.rho


def test_spec_validation():
    with pytest.raises(InputError):
        PadicRadiusSpec.rational(13, [Fraction(1, 13)] * 4)
    with pytest.raises(InputError):
        PadicRadiusSpec.rational(13, [Fraction(13, 2)] * 4)
    with pytest.raises(InputError):
        PadicRadiusSpec(13, "weird", (1, 1, 1, 1))
    with pytest.raises(InputError):
        PadicRadiusSpec.constant(13, (1, 1, 1))
    with pytest.raises(InputError):
        PadicRadiusSpec.digit_stream(5, [[0, 1]] * 4)
    spec = PadicRadiusSpec.digit_stream(5, [[1, 2]] * 4)
    with pytest.raises(InputError):
        truncate_radii(spec, 3)


def test_p_lower_bound_examples():
    assert p_lower_bound(RadiiTuple4.from_reps(PrimeLevel(11, 1), (3, 2, 4, 2))) == 9
    assert p_lower_bound(truncate_radii(PadicRadiusSpec.rational(13, QUARTER), 1)) == 18
    empty = RadiiTuple4.from_indices(PrimeLevel(11, 1), (0, 0, 0, 4))
    assert csets_04(empty).total == 0
    with pytest.raises(EmptyModuli):
        p_lower_bound(empty)


def test_exact_ratio_helpers():
    assert ratio_at_least(18, 10, Fraction(1, 2), 2)
    assert not ratio_at_least(18, 10, Fraction(1, 2), 6)
    assert ratio_at_least(5, 0, Fraction(1, 2), 100)
    assert ratio_at_least(1, 7, 0, 1)
    assert ratio_ge_ratio(18, 10, 234, 3178, Fraction(1, 2))
    assert ratio_decimal(18, 10, Fraction(1, 2)).startswith("5.69209978830308")
    assert ratio_decimal(6, 0, Fraction(1, 2)) == "inf"


def test_tower_report_p13():
    rep = tower_report(PadicRadiusSpec.rational(13, QUARTER), 3, [Fraction(1, 2)])
    r1, r2, r3 = rep.rows
    assert (r1.total, r1.genus) == (18, 10)
    assert r1.ratios[Fraction(1, 2)].startswith("5.69")
    for r in rep.rows:
        assert r.p_lower >= r.total
        assert ratio_at_least(r.p_lower, r.genus, Fraction(1, 2), 2)
    assert rep.tower_condition
    assert rep.delta_lower is not None and rep.delta_lower <= Fraction(1, 2)


def test_tower_report_degenerate_constant():
    rep = tower_report(PadicRadiusSpec.constant(11, (1, 1, 1, 1)), 3, [Fraction(1, 2), Fraction(1)])
    assert [r.genus for r in rep.rows] == [1, 1, 1]
    assert not rep.tower_condition
    assert rep.non_increasing_levels == [2, 3]
    assert any("not a tower" in n for n in rep.notes)


def test_certificate_p13():
    cert = alpha_goodness_certificate(PadicRadiusSpec.rational(13, QUARTER), 5, 3)
    assert cert.passed
    assert "for N <= 3" in cert.wording and "asymptotically" not in cert.wording
    for lv in cert.levels:
        assert lv.membership and lv.degree_floor_holds and lv.total_floor_holds and lv.genus_bound_holds
        assert lv.degree >= 5**lv.N


def test_certificate_s1_degenerate_exponent():
    cert = alpha_goodness_certificate(PadicRadiusSpec.rational(13, QUARTER), 1, 2)
    assert cert.passed


def test_certificate_membership_failure():
    with pytest.raises(MembershipFailure) as exc:
        alpha_goodness_certificate(PadicRadiusSpec.constant(13, (0, 0, 0, 0)), 5, 2)
    assert exc.value.level == 1
    with pytest.raises(MembershipFailure) as exc:
        alpha_goodness_certificate(PadicRadiusSpec.constant(13, (3, 3, 3, 3)), 5, 2)
    assert exc.value.level == 2
    with pytest.raises(InputError):
        alpha_goodness_certificate(PadicRadiusSpec.rational(13, QUARTER), 6, 2)
