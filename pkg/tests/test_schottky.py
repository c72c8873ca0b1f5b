import random
from fractions import Fraction

import pytest

from padic_periods.schottky import (
    INFINITY,
    BoundaryPoleError,
    Disk,
    GeometryError,
    MobiusMap,
    SchottkyGroup,
    TreeVertex,
    disks_disjoint,
    fundamental_domain_sample,
    is_hyperbolic,
    mobius_image_of_ball,
    reduced_words_of_length,
    reduced_words_up_to,
    translation_length,
    tree_distance,
    verify_good_position,
)

from _instances import bounded_genus2_group, genus2_group, tate_group


class TestHyperbolicity:
    def test_diagonal_is_hyperbolic(self):
        assert is_hyperbolic(MobiusMap(5, 0, 0, 1), 5)

    def test_order_two_rotation_is_not(self):
        assert not is_hyperbolic(MobiusMap(0, 1, -1, 0), 5)

    def test_parabolic_is_not(self):
        for p in (5, 7, 13):
            assert not is_hyperbolic(MobiusMap(1, 1, 0, 1), p)

    def test_translation_lengths(self):
        assert translation_length(MobiusMap(5, 0, 0, 1), 5) == 1
        assert translation_length(MobiusMap(125, 0, 0, 5), 5) == 2

    def test_length_is_conjugation_invariant(self):
        rng = random.Random(11)
        m = MobiusMap(25, 0, 0, 1)
        found = 0
        while found < 20:
            entries = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)]
            try:
                g = MobiusMap(*entries)
            except GeometryError:
                continue
            found += 1
            conj = g @ m @ g.inverse()
            assert translation_length(conj, 5) == 2

    def test_length_of_powers(self):
        m = MobiusMap(5, 0, 1, 1)  # tr 6, det 5: hyperbolic, length 1
        assert translation_length(m, 5) == 1
        acc = m
        for n in range(2, 6):
            acc = acc @ m
            assert translation_length(acc, 5) == n

    def test_nonhyperbolic_length_refused(self):
        with pytest.raises(GeometryError):
            translation_length(MobiusMap(1, 1, 0, 1), 5)

    def test_singular_matrix_refused(self):
        with pytest.raises(GeometryError):
            MobiusMap(1, 2, 2, 4)


class TestMobiusAction:
    def test_evaluation(self):
        m = MobiusMap(2, 1, 1, -3)
        assert m(4) == 9
        assert m(3) is INFINITY
        assert m(INFINITY) == 2

    def test_compose_matches_evaluation(self):
        f = MobiusMap(2, 1, 1, -3)
        g = MobiusMap(0, 1, 1, 0)
        z = Fraction(7, 2)
        assert (f @ g)(z) == f(g(z))

    def test_inverse(self):
        m = MobiusMap(2, 1, 1, -3)
        for z in (0, 1, Fraction(5, 7)):
            assert m.inverse()(m(z)) == z
        assert m @ m.inverse() == MobiusMap(1, 0, 0, 1)


class TestWordEnumeration:
    def test_rank_one_up_to_three(self):
        g = SchottkyGroup((MobiusMap(5, 0, 0, 1),))
        shells = reduced_words_up_to(g, 3)
        words = [w for shell in shells for (w, _) in shell]
        assert len(words) == 7
        assert set(words) == {
            (), (1,), (-1,), (1, 1), (-1, -1), (1, 1, 1), (-1, -1, -1),
        }

    def test_rank_two_exact_length_two(self):
        g = genus2_group(5)
        assert len(reduced_words_of_length(g, 2)) == 12

    def test_length_zero(self):
        g = genus2_group(5)
        assert [w for (w, _) in reduced_words_of_length(g, 0)] == [()]

    def test_shell_counts(self):
        for rank in (1, 2, 3):
            gens = tuple(
                MobiusMap(5, 0, 0, 1) if i == 0 else MobiusMap(5 + i, i, 1, 1)
                for i in range(rank)
            )
            g = SchottkyGroup(gens)
            for ell in range(1, 7):
                n = len(reduced_words_of_length(g, ell))
                assert n == 2 * rank * (2 * rank - 1) ** (ell - 1)

    def test_maps_match_letterwise_composition(self):
        g = genus2_group(5)
        for word, mat in reduced_words_of_length(g, 3):
            direct = g.word_map(word)
            assert mat == direct


class TestDisks:
    def test_contains(self):
        ball = Disk(0, 1, closed=True)
        assert ball.contains(5, 5)
        assert ball.contains(0, 5)
        assert not ball.contains(1, 5)
        assert not ball.contains(INFINITY, 5)
        outside = ball.complemented()
        assert outside.contains(1, 5)
        assert outside.contains(INFINITY, 5)
        assert not outside.contains(25, 5)

    def test_open_vs_closed_boundary(self):
        closed = Disk(0, 1, closed=True)
        open_ = Disk(0, 1, closed=False)
        assert closed.contains(5, 5)
        assert not open_.contains(5, 5)
        assert open_.contains(25, 5)

    def test_same_set_recentring(self):
        assert Disk(0, 1, True).same_set(Disk(5, 1, True), 5)
        assert not Disk(0, 1, False).same_set(Disk(5, 1, False), 5)
        assert Disk(0, 1, False).same_set(Disk(25, 1, False), 5)
        assert not Disk(0, 1, True).same_set(Disk(0, 1, False), 5)

    def test_disjointness(self):
        assert disks_disjoint(Disk(0, 1, True), Disk(1, 1, True), 5)
        assert not disks_disjoint(Disk(0, 1, True), Disk(5, 1, True), 5)
        assert not disks_disjoint(Disk(0, 0, True), Disk(5, 1, True), 5)
        # equal radius, both open, centers exactly on the sphere: disjoint
        assert disks_disjoint(Disk(0, 1, False), Disk(5, 1, False), 5)
        assert not disks_disjoint(Disk(0, 1, True), Disk(5, 1, False), 5)
        # two complements always share infinity
        assert not disks_disjoint(
            Disk(0, 0, True, True), Disk(100, 5, True, True), 5
        )

    def test_ball_inside_complement(self):
        comp = Disk(0, 0, closed=True, complement=True)  # v < 0 plus infinity
        assert disks_disjoint(Disk(0, 0, True), comp, 5)
        assert disks_disjoint(Disk(3, 2, True), comp, 5)
        assert not disks_disjoint(Disk(Fraction(1, 5), 0, True), comp, 5)

    def test_trichotomy(self):
        rng = random.Random(7)
        balls = [
            Disk(rng.randint(0, 24), rng.choice([-1, 0, 1, 2]), rng.random() < 0.5)
            for _ in range(40)
        ]
        for i, b1 in enumerate(balls):
            for b2 in balls[i + 1:]:
                if disks_disjoint(b1, b2, 5):
                    continue
                from padic_periods.schottky import _ball_subset

                assert _ball_subset(b1, b2, 5) or _ball_subset(b2, b1, 5)


def projective_sample(p):
    pts = [Fraction(x) for x in range(p**3)]
    pts += [Fraction(1, x) for x in range(p, p**3, p)]
    pts.append(INFINITY)
    return pts


class TestBallImages:
    def test_translation(self):
        img = mobius_image_of_ball(MobiusMap(1, 1, 0, 1), Disk(0, 2, True), 5)
        assert img == Disk(1, 2, True)

    def test_scaling(self):
        img = mobius_image_of_ball(MobiusMap(5, 0, 0, 1), Disk(0, 0, True), 5)
        assert img == Disk(0, 1, True)

    def test_inversion_pole_outside(self):
        img = mobius_image_of_ball(MobiusMap(0, 1, 1, 0), Disk(5, 2, True), 5)
        assert img.same_set(Disk(Fraction(1, 5), 0, True), 5)
        assert not img.complement

    def test_inversion_pole_inside(self):
        img = mobius_image_of_ball(MobiusMap(0, 1, 1, 0), Disk(0, 1, True), 5)
        assert img.complement
        assert not img.closed
        assert img.ball_part().same_set(Disk(0, -1, False), 5)

    def test_boundary_pole_refused(self):
        with pytest.raises(BoundaryPoleError):
            mobius_image_of_ball(MobiusMap(0, 1, 1, 0), Disk(5, 1, True), 5)

    def test_complement_input(self):
        img = mobius_image_of_ball(
            MobiusMap(5, 0, 0, 1), Disk(0, -1, True, complement=True), 5
        )
        assert img == Disk(0, 0, True, complement=True)

    @pytest.mark.parametrize("p", [5, 7])
    def test_exhaustive_residue_disk_oracle(self, p):
        maps = [
            MobiusMap(0, 1, 1, 0),
            MobiusMap(1, 1, 0, 1),
            MobiusMap(p, 0, 0, 1),
            MobiusMap(2, 1, 1, 1),
            MobiusMap(1, 2, p, 1),
            MobiusMap(p, 1, 1, p),
        ]
        disks = []
        for center in (0, 1, p, p + 1):
            for rval in (-1, 0, 1):
                for closed in (True, False):
                    disks.append(Disk(center, rval, closed))
                    disks.append(Disk(center, rval, closed, complement=True))
        sample = projective_sample(p)
        boundary_hits = 0
        for m in maps:
            for d in disks:
                try:
                    img = mobius_image_of_ball(m, d, p)
                except BoundaryPoleError:
                    boundary_hits += 1
                    continue
                for z in sample:
                    assert d.contains(z, p) == img.contains(m(z), p), (m, d, z)
        assert boundary_hits > 0


class TestGoodPosition:
    def test_tate_system_passes(self):
        report = verify_good_position(tate_group(5), 5)
        assert report.ok
        assert report.pairwise_disjoint
        assert report.messages == []

    def test_genus_two_system_passes(self):
        for p in (5, 7):
            report = verify_good_position(genus2_group(p), p)
            assert report.ok, report.messages

    def test_bounded_conjugate_passes(self):
        report = verify_good_position(bounded_genus2_group(5), 5)
        assert report.ok, report.messages
        for pair in bounded_genus2_group(5).ball_system:
            for d in pair:
                assert not d.contains(INFINITY, 5)

    def test_interleaved_fixed_points_fail_disjointness(self):
        p = 5
        a1 = MobiusMap(p * p, 0, 0, 1)
        g = MobiusMap(p, 1, 1, 1)  # sends 0, infinity to 1, p
        a2 = g @ a1 @ g.inverse()
        b1 = Disk(0, -1, closed=True, complement=True)
        c1 = Disk(0, 1, closed=True)
        b2 = mobius_image_of_ball(g, b1, p)
        c2 = mobius_image_of_ball(g, c1, p)
        group = SchottkyGroup((a1, a2), ((b1, c1), (b2, c2)))
        report = verify_good_position(group, p)
        assert not report.pairwise_disjoint
        assert not report.ok

    def test_missing_system_refused(self):
        group = SchottkyGroup((MobiusMap(5, 0, 0, 1),))
        with pytest.raises(GeometryError):
            verify_good_position(group, 5)

    def test_empty_group_vacuous_pass(self):
        report = verify_good_position(SchottkyGroup((), ()), 5)
        assert report.ok

    def test_wrong_system_size_refused(self):
        with pytest.raises(GeometryError):
            SchottkyGroup(
                (MobiusMap(5, 0, 0, 1),),
                ((Disk(0, 1), Disk(0, 0)), (Disk(1, 1), Disk(2, 1))),
            )


class TestContainment:
    @pytest.mark.parametrize("make", [tate_group, genus2_group])
    def test_words_drive_sample_into_marked_disks(self, make):
        p = 5
        group = make(p)
        z0 = fundamental_domain_sample(group, p)
        disks = group.ball_system
        for shell in reduced_words_up_to(group, 4)[1:]:
            for word, mat in shell:
                first = word[0]
                target = disks[abs(first) - 1][1 if first > 0 else 0]
                assert target.contains(mat(z0), p), (word, mat(z0))

    def test_sample_avoids_system(self):
        p = 5
        group = genus2_group(p)
        z0 = fundamental_domain_sample(group, p)
        for pair in group.ball_system:
            for d in pair:
                assert not d.contains(z0, p)


class TestTree:
    def test_standard_vs_scaled(self):
        v0 = TreeVertex.standard(5)
        v1 = TreeVertex.from_matrix(((5, 0), (0, 1)), 5)
        v2 = TreeVertex.from_matrix(((25, 0), (0, 1)), 5)
        assert tree_distance(v0, v0) == 0
        assert tree_distance(v0, v1) == 1
        assert tree_distance(v0, v2) == 2
        assert tree_distance(v1, v2) == 1

    def test_canonical_form_is_basis_independent(self):
        p = 5
        m = ((Fraction(25), Fraction(3)), (Fraction(0), Fraction(1)))
        v = TreeVertex.from_matrix(m, p)
        units = [
            ((1, 0), (1, 1)),
            ((2, 1), (1, 1)),
            ((1, 3), (0, 1)),
            ((3, 0), (0, 2)),
        ]
        mobius_units = [MobiusMap.from_rows(u) for u in units]
        for u in mobius_units:
            prod = (MobiusMap.from_rows(m) @ u).rows()
            assert TreeVertex.from_matrix(prod, p) == v
        scaled = tuple(tuple(x * 5 for x in row) for row in m)
        assert TreeVertex.from_matrix(scaled, p) == v
        shrunk = tuple(tuple(x / 25 for x in row) for row in m)
        assert TreeVertex.from_matrix(shrunk, p) == v

    def test_distinct_classes_differ(self):
        p = 5
        v0 = TreeVertex.standard(p)
        v1 = TreeVertex.from_matrix(((5, 1), (0, 1)), p)
        v2 = TreeVertex.from_matrix(((5, 0), (0, 1)), p)
        assert v1 != v2
        assert tree_distance(v1, v2) == 2
        assert tree_distance(v0, v1) == 1

    def test_orbit_minimum_matches_translation_length(self):
        p = 5
        alpha = MobiusMap(p * p, 0, 0, 1)
        assert translation_length(alpha, p) == 2
        arows = alpha.rows()
        seen = []
        candidates = [
            ((1, 0), (0, 1)),
            ((p, 0), (0, 1)),
            ((p, 1), (0, 1)),
            ((1, 0), (0, p)),
            ((p * p, 3), (0, 1)),
            ((1, Fraction(1, p)), (0, Fraction(1, p))),
            ((2, 1), (1, 1)),
        ]
        for rows in candidates:
            mv = MobiusMap.from_rows(rows)
            v = TreeVertex.from_matrix(rows, p)
            av = TreeVertex.from_matrix((alpha @ mv).rows(), p)
            seen.append(tree_distance(v, av))
        assert min(seen) == 2
        assert all(d >= 2 for d in seen)

    def test_distance_symmetric(self):
        p = 5
        rng = random.Random(3)
        verts = []
        for _ in range(12):
            while True:
                rows = tuple(
                    tuple(Fraction(rng.randint(-10, 10)) for _ in range(2))
                    for _ in range(2)
                )
                if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] != 0:
                    break
            verts.append(TreeVertex.from_matrix(rows, p))
        for u in verts:
            for v in verts:
                assert tree_distance(u, v) == tree_distance(v, u)
                assert tree_distance(u, v) >= 0
                if u == v:
                    assert tree_distance(u, v) == 0
