import math
from fractions import Fraction

import pytest

from padic_periods.arith import rational_valuation
from padic_periods.schottky import (
    INFINITY,
    Disk,
    GeometryError,
    MobiusMap,
    SchottkyGroup,
    translation_length,
)
from padic_periods.theta import (
    OrbitCollisionError,
    StabilizationError,
    ThetaError,
    canonical_points,
    drinfeld_pairing,
    theta_quotient,
    theta_truncated,
    u_alpha,
    valuation_gram,
)

from _instances import bounded_genus2_group, genus2_group, tate_group


def vp(x, p):
    return None if x == 0 else rational_valuation(x, p)


def tate_direct_product(a, b, z, length, p):
    acc = Fraction(1)
    for n in range(-length, length + 1):
        acc *= (z - a * Fraction(p) ** n) / (z - b * Fraction(p) ** n)
    return acc


class TestThetaTruncated:
    def test_identity_word_only(self):
        th = theta_truncated(tate_group(5), Fraction(2), Fraction(3), Fraction(7), 0, 5)
        assert th.exact == Fraction(5, 4)

    def test_equal_endpoints_give_one(self):
        g = tate_group(5)
        for L in range(5):
            th = theta_truncated(g, Fraction(2), Fraction(2), Fraction(7), L, 5)
            assert th.exact == 1

    @pytest.mark.parametrize("length", [5, 6])
    def test_matches_direct_product(self, length):
        g = tate_group(5)
        a, b, z = Fraction(2), Fraction(3), Fraction(7)
        th = theta_truncated(g, a, b, z, length, 5)
        assert th.exact == tate_direct_product(a, b, z, length, 5)

    def test_drifting_product_is_not_certified(self):
        # the far half of each shell contributes a constant factor a/b, so
        # the raw product cannot stabilize; the profile records that honestly
        th = theta_truncated(tate_group(5), Fraction(2), Fraction(3), Fraction(7), 6, 5)
        assert [v for (_, v) in th.profile] == [0] * 6
        assert th.stabilization_estimate is None

    def test_orbit_collision_detected(self):
        g = tate_group(5)
        with pytest.raises(OrbitCollisionError):
            theta_truncated(g, Fraction(2), Fraction(3), Fraction(10), 3, 5)

    def test_infinite_evaluation_point_refused(self):
        with pytest.raises(ThetaError):
            theta_truncated(tate_group(5), Fraction(2), Fraction(3), INFINITY, 2, 5)

    def test_group_without_system_refused(self):
        bare = SchottkyGroup((MobiusMap(5, 0, 0, 1),))
        with pytest.raises(GeometryError):
            theta_truncated(bare, Fraction(2), Fraction(3), Fraction(7), 2, 5)

    def test_bad_system_refused(self):
        overlapping = SchottkyGroup(
            (MobiusMap(5, 0, 0, 1),), ((Disk(0, 0, True), Disk(5, 0, True)),)
        )
        with pytest.raises(GeometryError):
            theta_truncated(overlapping, Fraction(2), Fraction(3), Fraction(7), 2, 5)

    def test_value_valuation_matches_exact(self):
        th = theta_truncated(tate_group(5), Fraction(2), Fraction(3), Fraction(7), 4, 5)
        assert th.value.val == rational_valuation(th.exact, 5)


class TestCanonicalPoints:
    def test_tate_points_escape_the_unit_ball(self):
        pts = canonical_points(tate_group(5), 5)
        assert pts == [Fraction(1, 5), Fraction(2, 5)]

    def test_genus2_points(self):
        assert canonical_points(genus2_group(5), 5) == [Fraction(3), Fraction(4)]

    def test_excluded_points_are_skipped(self):
        pts = canonical_points(genus2_group(5), 5, count=2, exclude=(Fraction(3),))
        assert Fraction(3) not in pts


class TestTatePairing:
    def test_period_valuation_and_limit(self):
        g = tate_group(5)
        res = drinfeld_pairing(g, (1,), (1,), 8, 5)
        assert rational_valuation(res.exact, 5) == 1
        assert res.precision_estimate == 7
        assert vp(res.exact / 5 - 1, 5) >= res.precision_estimate
        assert translation_length(g.generators[0], 5) == 1

    def test_profile_strictly_increases(self):
        res = drinfeld_pairing(tate_group(5), (1,), (1,), 8, 5)
        vals = [v for (_, v) in res.profile]
        assert len(vals) >= 5
        assert all(u < w for u, w in zip(vals, vals[1:]))

    def test_estimate_below_observed_tail(self):
        res = drinfeld_pairing(tate_group(5), (1,), (1,), 8, 5)
        assert res.precision_estimate < res.profile[-1][1]

    def test_identity_beta_gives_exact_one(self):
        res = drinfeld_pairing(tate_group(5), (1,), (), 8, 5)
        assert res.exact == 1
        assert res.precision_estimate == math.inf

    def test_insufficient_length_refused(self):
        with pytest.raises(StabilizationError):
            drinfeld_pairing(tate_group(5), (1,), (1,), 1, 5)

    def test_witnesses_recorded(self):
        res = drinfeld_pairing(tate_group(5), (1,), (1,), 8, 5)
        assert res.witnesses == (Fraction(1, 5), Fraction(2, 5))


class TestGenus2Pairing:
    def test_symmetry_to_reported_precision(self):
        g = genus2_group(5)
        r12 = drinfeld_pairing(g, (1,), (2,), 6, 5)
        r21 = drinfeld_pairing(g, (2,), (1,), 6, 5)
        bound = min(r12.precision_estimate, r21.precision_estimate)
        assert bound >= 4
        d = r12.exact / r21.exact - 1
        assert d == 0 or rational_valuation(d, 5) >= bound

    def test_bilinearity_to_reported_precision(self):
        g = genus2_group(5)
        joint = drinfeld_pairing(g, (1, 2), (1,), 6, 5)
        left = drinfeld_pairing(g, (1,), (1,), 6, 5)
        right = drinfeld_pairing(g, (2,), (1,), 6, 5)
        bound = min(
            joint.precision_estimate, left.precision_estimate, right.precision_estimate
        )
        assert bound >= 4
        d = joint.exact / (left.exact * right.exact) - 1
        assert d == 0 or rational_valuation(d, 5) >= bound

    def test_witness_independence(self):
        g = genus2_group(5)
        r1 = drinfeld_pairing(g, (1,), (2,), 6, 5)
        r2 = drinfeld_pairing(g, (1,), (2,), 6, 5, base=Fraction(8), eval_point=Fraction(9))
        bound = min(r1.precision_estimate, r2.precision_estimate)
        d = r1.exact / r2.exact - 1
        assert d == 0 or rational_valuation(d, 5) >= bound

    def test_valuation_gram_positive_definite(self):
        g = genus2_group(5)
        gram = valuation_gram(g, 6, 5)
        assert gram == [[2, 0], [0, 2]]
        assert gram[0][0] > 0
        assert gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0] > 0
        lengths = [translation_length(m, 5) for m in g.generators]
        assert [gram[i][i] for i in range(2)] == lengths


class TestUAlpha:
    def test_identity_word_is_one(self):
        u = u_alpha(genus2_group(5), (), Fraction(4), 4, 5)
        assert u.exact == 1

    def test_tate_u_is_uncertified_but_pairs_to_the_period(self):
        g = tate_group(5)
        u = u_alpha(g, (1,), Fraction(2, 5), 6, 5)
        assert u.stabilization_estimate is None
        res = drinfeld_pairing(g, (1,), (1,), 6, 5)
        assert rational_valuation(res.exact, 5) == 1

    def test_bounded_group_u_is_certified(self):
        u = u_alpha(bounded_genus2_group(5), (1,), Fraction(2), 6, 5)
        assert u.stabilization_estimate is not None
        assert u.stabilization_estimate >= 4

    def test_multiplicativity_on_bounded_group(self):
        g = bounded_genus2_group(5)
        z = Fraction(2)
        u1 = u_alpha(g, (1,), z, 6, 5)
        u2 = u_alpha(g, (2,), z, 6, 5)
        u12 = u_alpha(g, (1, 2), z, 6, 5)
        bound = min(
            u1.stabilization_estimate,
            u2.stabilization_estimate,
            u12.stabilization_estimate,
        )
        d = u12.exact / (u1.exact * u2.exact) - 1
        assert d == 0 or rational_valuation(d, 5) >= bound

    def test_base_point_choice_is_cross_checked(self):
        # runs the built-in second-base verification on a certified instance
        g = bounded_genus2_group(5)
        u = u_alpha(g, (1,), Fraction(2), 6, 5, base=Fraction(11))
        assert u.a == Fraction(11)


class TestFunctionalEquation:
    @pytest.mark.parametrize(
        "make,pts",
        [
            (bounded_genus2_group, (2, 5, 6, 11)),
            (genus2_group, (3, 4, 8, 9)),
        ],
    )
    def test_swap_identity_is_exact(self, make, pts):
        # cross-ratio invariance makes theta(a,b,z)/theta(a,b,z') equal to
        # theta(z,z',a)/theta(z,z',b) exactly on inverse-closed shells
        g = make(5)
        a, b, z1, z2 = (Fraction(x) for x in pts)
        q1 = theta_quotient(g, a, b, z1, z2, 5, 5)
        q2 = theta_quotient(g, z1, z2, a, b, 5, 5)
        assert q1.exact == q2.exact

    def test_quotients_certify(self):
        g = genus2_group(5)
        q = theta_quotient(g, Fraction(3), Fraction(4), Fraction(8), Fraction(9), 6, 5)
        assert q.stabilization_estimate is not None
        assert q.stabilization_estimate >= 4
