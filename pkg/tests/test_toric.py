from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbtoric import (
    Cmp,
    MinusOnePresent,
    NonpositiveArea,
    NoNonnegativeEntry,
    NotConcaveCase,
    NotCoprime,
    NotDelzantCorner,
    SizeTooLarge,
    TooShort,
    Verdict,
    areas,
    blow_down,
    blow_up_corner,
    boundary_rays,
    choose_heights,
    classify,
    cross,
    decompose,
    det_intersection,
    lens_equivalent,
    lens_invariant,
    moment_polygon,
    ray_sequence,
)

# chains acceptable to the construction: no -1, at least one entry >= 0
construction_chains = (
    st.lists(st.integers(-6, 4).filter(lambda v: v != -1), min_size=2, max_size=8)
    .map(tuple)
    .filter(lambda s: any(v >= 0 for v in s))
)


def pivots_of(s):
    return [i for i in range(1, len(s) + 1) if s[i - 1] >= 0]


class TestDecompose:
    def test_four_vertices(self):
        dec = decompose((-2, 1, 0, -2), 2)
        assert dec.pairs == ((-2, 0), (1, 0), (0, -2))

    def test_two_vertices(self):
        assert decompose((3, -2), 1).pairs == ((3, -2),)

    def test_lens_example(self):
        assert decompose((2, 1, 3), 1).pairs == ((2, 1), (0, 3))

    def test_last_pivot_reuses_previous_pattern(self):
        assert decompose((-2, -3, 4), 3).pairs == ((-2, 0), (-3, 4))
        assert decompose((-2, 3, 4), 3).pairs == decompose((-2, 3, 4), 2).pairs

    def test_errors(self):
        with pytest.raises(TooShort):
            decompose((5,), 1)
        with pytest.raises(MinusOnePresent):
            decompose((-1, 2), 2)
        with pytest.raises(NoNonnegativeEntry):
            decompose((-2, -3), 1)


class TestChooseHeights:
    def test_four_vertex_example(self):
        assert choose_heights((-2, 1, 0, -2), 2) == (-1, -3, -3, -1)

    def test_negative_second_entry(self):
        assert choose_heights((3, -2), 1) == (-3, -1)

    def test_nonnegative_pair(self):
        assert choose_heights((2, 3), 1) == (-1, -1)

    @given(construction_chains, st.data())
    def test_satisfies_witness_inequalities(self, s, data):
        from plumbtoric import negative_gs_check

        i = data.draw(st.sampled_from(pivots_of(s)))
        z = choose_heights(s, i)
        assert all(v < 0 for v in z)
        witness = negative_gs_check(s, z)
        assert isinstance(witness, tuple)
        assert witness == areas(s, z)


class TestAreas:
    def test_four_vertex_figure(self):
        assert areas((-2, 1, 0, -2), (-1, -3, -3, -1)) == (1, 7, 4, 1)

    def test_two_vertex_cases(self):
        assert areas((2, 3), (-1, -1)) == (3, 4)
        assert areas((3, -2), (-3, -1)) == (10, 1)

    def test_bad_heights(self):
        with pytest.raises(NonpositiveArea):
            areas((3, -2), (-1, -1))


class TestRaySequence:
    def test_lens_example(self):
        assert ray_sequence((2, 1, 3), 1).w == ((1, -2), (-1, 1), (2, -3))

    def test_four_vertex_example(self):
        assert ray_sequence((-2, 1, 0, -2), 2).w == ((1, 2), (0, 1), (-1, 0), (-1, -1))

    def test_family_endpoints(self):
        first, last = boundary_rays((3, -2, -2), 1)
        assert (first, last) == ((1, -3), (3, 2))

    @given(construction_chains, st.data())
    def test_step_cross_identity(self, s, data):
        i = data.draw(st.sampled_from(pivots_of(s)))
        dec = decompose(s, i)
        rays = ray_sequence(s, i).w
        for j, (a, b) in enumerate(dec.pairs, start=1):
            assert cross(rays[j - 1], rays[j]) == 1 - a * b

    @given(construction_chains)
    def test_boundary_rays_pivot_independent(self, s):
        expected = None
        for i in pivots_of(s):
            pair = boundary_rays(s, i)
            if expected is None:
                expected = pair
            assert pair == expected


class TestClassify:
    def test_figure_triple(self):
        # the -1 end sphere is an exceptional divisor; blow it down first
        assert classify((-2, 1, 0, -1), reduce=True).verdict is Verdict.OVERTWISTED
        assert classify((-2, 1, 0, -2)).verdict is Verdict.TIGHT
        assert classify((-2, 1, 0, -3)).verdict is Verdict.TIGHT

    def test_whole_plane_example(self):
        report = classify((2, 1, 3))
        assert report.verdict is Verdict.OVERTWISTED
        assert report.cone_is_whole_plane
        assert report.winding.vs_two_pi is Cmp.GT

    def test_requires_reduce_flag(self):
        with pytest.raises(MinusOnePresent):
            classify((2, -1, 2))
        assert classify((2, -1, 2), reduce=True).chain == (3, 3)

    def test_not_concave(self):
        # all entries <= -2 is the convex, negative definite regime
        with pytest.raises(NotConcaveCase) as err:
            classify((-2, -2))
        assert err.value.negative_definite is True
        with pytest.raises(NotConcaveCase) as err:
            classify((-3, -2, -5))
        assert err.value.negative_definite is True

    @given(construction_chains)
    def test_det_identity(self, s):
        report = classify(s)
        assert report.det_check
        r1, r2 = report.rays.w[0], report.rays.w[-1]
        assert det_intersection(s) == (-1) ** (len(s) - 1) * cross(r1, r2)

    @given(construction_chains)
    def test_reversal_preserves_verdict_and_lens_class(self, s):
        rev = tuple(reversed(s))
        a, b = classify(s), classify(rev)
        assert a.verdict is b.verdict
        assert lens_equivalent(a.lens, b.lens)


class TestLensInvariant:
    def test_sphere_example(self):
        assert lens_invariant((2, 1, 3)) == (1, 0)

    def test_family_example(self):
        assert lens_invariant((3, -2, -2)) == (11, 3)

    def test_borderline_sphere(self):
        assert lens_invariant((-4, 0, 3)) == (1, 0)


class TestLensEquivalent:
    def test_inverse_pair(self):
        assert lens_equivalent((7, 2), (7, 4))  # 2 * 4 = 1 mod 7

    def test_non_equivalent(self):
        assert not lens_equivalent((5, 1), (5, 2))

    def test_translation(self):
        assert lens_equivalent((7, 2), (7, 9))

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            lens_equivalent((6, 3), (6, 1))

    def test_s1_times_s2(self):
        assert lens_equivalent((0, 1), (0, -1))
        assert not lens_equivalent((0, 1), (0, 3))


class TestMomentPolygon:
    def test_two_vertex_example(self):
        poly = moment_polygon((2, 3), 1, (-1, -1))
        assert poly.vertices == ((-1, 2), (-1, -1), (3, -1))
        assert [(e.self_intersection, e.area) for e in poly.edges] == [(2, 3), (3, 4)]
        assert poly.rays == ((1, -2), (-3, 1))

    def test_four_vertex_labels(self):
        poly = moment_polygon((-2, 1, 0, -2), 2, (-1, -3, -3, -1))
        assert [(e.self_intersection, e.area) for e in poly.edges] == [
            (-2, 1),
            (1, 7),
            (0, 4),
            (-2, 1),
        ]

    def test_too_short(self):
        with pytest.raises(TooShort):
            moment_polygon((4,), 1)

    def test_rejects_bad_heights(self):
        with pytest.raises(NonpositiveArea):
            moment_polygon((3, -2), 1, (-1, -1))

    @given(construction_chains, st.data())
    @settings(max_examples=40)
    def test_edge_data_matches_areas(self, s, data):
        i = data.draw(st.sampled_from(pivots_of(s)))
        z = choose_heights(s, i)
        poly = moment_polygon(s, i, z)
        assert tuple(e.area for e in poly.edges) == areas(s, z)
        assert tuple(e.self_intersection for e in poly.edges) == s
        assert poly.rays == boundary_rays(s, i)


class TestBlowUpCorner:
    def test_trapezoid_style_chop(self):
        poly = moment_polygon((0, 3), 1)
        chopped = blow_up_corner(poly, 1, Fraction(1, 2))
        labels = [(e.self_intersection, e.area) for e in chopped.edges]
        assert labels[1] == (-1, Fraction(1, 2))
        assert labels[0] == (-1, Fraction(1, 2))
        assert labels[2] == (2, Fraction(7, 2))

    def test_adjacent_self_intersections_drop(self):
        poly = moment_polygon((0, 4), 1)
        chopped = blow_up_corner(poly, 1, Fraction(1, 3))
        assert [e.self_intersection for e in chopped.edges] == [-1, -1, 3]

    def test_size_too_large(self):
        poly = moment_polygon((2, 3), 1, (-1, -1))
        with pytest.raises(SizeTooLarge):
            blow_up_corner(poly, 1, 3)

    def test_ray_corner_rejected(self):
        poly = moment_polygon((2, 3), 1, (-1, -1))
        with pytest.raises(NotDelzantCorner):
            blow_up_corner(poly, 0, Fraction(1, 2))

    @given(construction_chains, st.data())
    @settings(max_examples=30)
    def test_matches_chain_blow_up(self, s, data):
        i = data.draw(st.sampled_from(pivots_of(s)))
        poly = moment_polygon(s, i)
        corner = data.draw(st.integers(1, len(poly.vertices) - 2))
        chopped = blow_up_corner(poly, corner, Fraction(1, 2))
        labels = tuple(e.self_intersection for e in chopped.edges)
        expected = s[: corner - 1] + (s[corner - 1] - 1, -1, s[corner] - 1) + s[corner + 1 :]
        assert labels == expected
        if labels.count(-1) == 1:
            assert blow_down(labels) == s


def _overtwisted_sufficient(s):
    n = len(s)
    for i in range(n):
        if s[i] < 0:
            continue
        if i + 1 < n and (
            s[i] * s[i + 1] >= 2 or (s[i] * s[i + 1] >= 1 and n > 2)
        ):
            return True
        if any(
            abs(i - j) > 1 and (s[j] >= 1 or (s[j] >= 0 and n > 3))
            for j in range(n)
        ):
            return True
        if s[i] == 0 and 0 < i < n - 1:
            t = s[i - 1] + s[i + 1]
            if t >= 1 or (t >= 0 and n > 3):
                return True
    return False


def _tight_sufficient(s):
    n = len(s)
    for i in range(n):
        if s[i] < 0:
            continue
        if all(s[j] <= -2 for j in range(n) if j != i):
            return True
        if (
            s[i] == 0
            and 0 < i < n - 1
            and s[i - 1] + s[i + 1] <= -2
            and all(s[j] <= -2 for j in range(n) if j not in (i, i + 1))
        ):
            return True
    return False


class TestTheoremConsistencySpots:
    def test_overtwisted_cases(self):
        assert classify((3, 3)).verdict is Verdict.OVERTWISTED  # (a): product >= 2
        assert classify((2, -2, 3)).verdict is Verdict.OVERTWISTED  # (b)
        assert classify((-2, 1, 0, -1), reduce=True).verdict is Verdict.OVERTWISTED

    def test_exhaustive_wide_entries_short_chains(self):
        # entries in [-6, 4] without -1, lengths 2..4: the sufficient
        # conditions never disagree with the exact angle
        import itertools

        values = [v for v in range(-6, 5) if v != -1]
        for n in (2, 3, 4):
            for s in itertools.product(values, repeat=n):
                if not any(v >= 0 for v in s):
                    continue
                verdict = classify(s).verdict
                if _overtwisted_sufficient(s):
                    assert verdict is Verdict.OVERTWISTED, s
                if _tight_sufficient(s):
                    assert verdict is Verdict.TIGHT, s

    def test_tight_cases(self):
        assert classify((3, -2, -2)).verdict is Verdict.TIGHT  # (a)
        assert classify((5, -2)).verdict is Verdict.TIGHT

    def test_borderline_family(self):
        assert classify((-2, 0, 1)).verdict is Verdict.TIGHT
        assert lens_invariant((-2, 0, 1)) == (1, 0)

    def test_half_plane_family_instance(self):
        report = classify((-2, -2, 0, 1, -2))
        assert report.rays.w[-1] == (-1, -2)
        assert report.winding.vs_pi is Cmp.EQ
        assert report.verdict is Verdict.TIGHT

    def test_extra_pair_flips_to_overtwisted(self):
        assert classify((-2, -2, 0, 1, -2, -2)).verdict is Verdict.OVERTWISTED

    def test_deep_tight_families(self):
        # borderline families with fixed interior data stay tight
        for n in (2, 3):
            for k in (2, 4):
                for m in (3, 4):
                    for t in (2, 3):
                        assert (
                            classify((-n, -k, 0, k - 1, -m, -t)).verdict
                            is Verdict.TIGHT
                        )
                        chain = (-n, -k, 0, k - 1, -m) + (-2,) * t
                        assert classify(chain).verdict is Verdict.TIGHT
