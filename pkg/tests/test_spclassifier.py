"""Classification data: enumeration, validation, inducing classes, diagnostics."""

import itertools

import pytest

from jacquet import (
    CuspidalGLLabel,
    GroupMode,
    GUClass,
    GUCuspidalLabel,
    HalfInt,
    InvalidDatumError,
    JordSequence,
    LJDatum,
    Segment,
    TwistFixednessWarning,
    UndeclaredReducibilityError,
    build_inducing_rep,
    check_inducing_constraints,
    enumerate_jord,
    enumerate_sp,
    leading_term_multiplicity,
    lj_from_obj,
    lj_to_obj,
    sp_necessary_conditions,
    validate_lj,
)
from helpers import h, seg

RHO = CuspidalGLLabel("rho")
RHO2 = CuspidalGLLabel("rho2")
CHI = CuspidalGLLabel("chi", conj_self_dual=False)

SIGMA = GUCuspidalLabel(
    "sigma",
    rank=0,
    reducibility={RHO: HalfInt(2), RHO2: h(1), CHI: HalfInt(1)},
    twist_fixed={RHO, RHO2},
)


def brute_force_sequences(a, max_b, lo=-3):
    """Independent filter over a coarse half-integer grid."""
    a = HalfInt(a)
    max_b = HalfInt(max_b)
    k = a.ceil()
    grid = [HalfInt.from_twice(t) for t in range(2 * lo, max_b.twice + 1)]
    out = []
    for combo in itertools.combinations(grid, k):
        if any(not (b - a).is_integer() for b in combo):
            continue
        if combo and not combo[0] > -1:
            continue
        if any(x >= y for x, y in zip(combo, combo[1:])):
            continue
        out.append(combo)
    return out


class TestEnumerateJord:
    def test_integer_point_count(self):
        seqs = enumerate_jord(RHO, HalfInt(2), HalfInt(3))
        got = [tuple(s.b) for s in seqs]
        expected = [
            (HalfInt(0), HalfInt(1)), (HalfInt(0), HalfInt(2)),
            (HalfInt(0), HalfInt(3)), (HalfInt(1), HalfInt(2)),
            (HalfInt(1), HalfInt(3)), (HalfInt(2), HalfInt(3)),
        ]
        assert got == expected

    def test_half_point_count(self):
        seqs = enumerate_jord(RHO, h(1), h(5))
        assert [tuple(s.b) for s in seqs] == [
            (h(-1),), (h(1),), (h(3),), (h(5),),
        ]

    def test_zero_point(self):
        seqs = enumerate_jord(RHO, HalfInt(0), HalfInt(5))
        assert len(seqs) == 1 and seqs[0].b == ()

    @pytest.mark.parametrize("a,max_b", [("2", "3"), ("1/2", "5/2"),
                                         ("3/2", "7/2"), ("1", "4")])
    def test_against_brute_force(self, a, max_b):
        got = [tuple(s.b) for s in enumerate_jord(RHO, HalfInt(a), HalfInt(max_b))]
        assert got == brute_force_sequences(a, max_b)

    def test_strict_excludes_empty_encodings(self):
        permissive = enumerate_jord(RHO, HalfInt(2), HalfInt(3))
        strict = enumerate_jord(RHO, HalfInt(2), HalfInt(3), strict=True)
        # strict drops exactly the b_1 = 0 sequences (empty first segment)
        assert [tuple(s.b) for s in strict] == [
            (HalfInt(1), HalfInt(2)), (HalfInt(1), HalfInt(3)),
            (HalfInt(2), HalfInt(3)),
        ]
        assert set(map(lambda s: tuple(s.b), strict)) < set(
            map(lambda s: tuple(s.b), permissive)
        )


class TestBuildInducingRep:
    def test_two_point_example(self):
        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(2))),), SIGMA
        )
        rep = build_inducing_rep(datum)
        assert rep == GUClass([seg(RHO, 1, 1), seg(RHO, 2, 2)], SIGMA)

    def test_empty_first_segment_dropped(self):
        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(0), HalfInt(3))),), SIGMA
        )
        rep = build_inducing_rep(datum)
        assert rep == GUClass([seg(RHO, 2, 3)], SIGMA)

    def test_empty_datum(self):
        rep = build_inducing_rep(LJDatum((), SIGMA))
        assert rep == GUClass([], SIGMA)

    def test_invalid_rejected(self):
        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(2), HalfInt(1))),), SIGMA
        )
        with pytest.raises(InvalidDatumError):
            build_inducing_rep(datum)

    def test_twist_fixedness_warning(self):
        loose = GUCuspidalLabel("sigma_loose", reducibility={RHO: HalfInt(1)})
        datum = LJDatum((JordSequence(RHO, HalfInt(1), (HalfInt(2),)),), loose)
        with pytest.warns(TwistFixednessWarning):
            build_inducing_rep(datum)


class TestInducingConstraints:
    def test_valid_ladder(self):
        assert check_inducing_constraints(
            [seg(RHO, 1, 1), seg(RHO, 2, 2)], HalfInt(2)
        )

    def test_ends_must_increase(self):
        assert not check_inducing_constraints(
            [seg(RHO, 1, 3), seg(RHO, 2, 2)], HalfInt(2)
        )

    def test_count_bound(self):
        segs = [seg(RHO, 0, 1), seg(RHO, 1, 2), seg(RHO, 2, 3)]
        assert not check_inducing_constraints(segs, HalfInt(2))

    def test_starts_must_form_ladder(self):
        assert not check_inducing_constraints(
            [seg(RHO, 2, 2), seg(RHO, 2, 3)], HalfInt(2)
        )

    def test_strong_positivity_required(self):
        assert not check_inducing_constraints([seg(RHO, 0, 0)], HalfInt(1))

    def test_empty_is_fine(self):
        assert check_inducing_constraints([], HalfInt(2))


class TestNecessaryConditions:
    def test_good_pair(self):
        report = sp_necessary_conditions(RHO, SIGMA)
        assert (report.conj_self_dual, report.twist_fixed) == (True, True)
        assert report.sp_possible
        assert report.reducibility == HalfInt(2)

    def test_not_self_dual(self):
        report = sp_necessary_conditions(CHI, SIGMA)
        assert not report.conj_self_dual
        assert not report.sp_possible

    def test_not_twist_fixed(self):
        sigma = GUCuspidalLabel("s2", reducibility={RHO: HalfInt(1)})
        report = sp_necessary_conditions(RHO, sigma)
        assert not report.twist_fixed
        assert not report.sp_possible


class TestLeadingTerm:
    def test_two_point_datum(self):
        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(2))),), SIGMA
        )
        assert leading_term_multiplicity(datum) == 1
        assert leading_term_multiplicity(datum, GroupMode.U) == 1

    def test_empty_datum(self):
        assert leading_term_multiplicity(LJDatum((), SIGMA)) == 1

    def test_invalid_rejected_before_computation(self):
        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(2), HalfInt(1))),), SIGMA
        )
        with pytest.raises(InvalidDatumError):
            leading_term_multiplicity(datum)


class TestEnumerateSP:
    def test_single_label_count_and_diagnostics(self):
        entries = enumerate_sp([RHO], SIGMA, HalfInt(3))
        assert len(entries) == 6
        assert all(e.constraints_ok for e in entries)
        assert all(e.leading_multiplicity == 1 for e in entries)

    def test_product_rule_two_labels(self):
        singles = {
            RHO: enumerate_sp([RHO], SIGMA, HalfInt(3)),
            RHO2: enumerate_sp([RHO2], SIGMA, HalfInt(2)),
        }
        both = enumerate_sp([RHO, RHO2], SIGMA, [HalfInt(3), HalfInt(2)])
        assert len(both) == len(singles[RHO]) * len(singles[RHO2])

    def test_per_label_bounds_example(self):
        # reducibility 1/2 with bound 3/2 and reducibility 1 with bound 2
        s = GUCuspidalLabel(
            "s3", reducibility={RHO: h(1), RHO2: HalfInt(1)},
            twist_fixed={RHO, RHO2},
        )
        both = enumerate_sp([RHO, RHO2], s, [h(3), HalfInt(2)])
        ones = enumerate_sp([RHO], s, h(3))
        twos = enumerate_sp([RHO2], s, HalfInt(2))
        assert len(both) == len(ones) * len(twos)

    def test_empty_label_list(self):
        entries = enumerate_sp([], SIGMA, HalfInt(3))
        assert len(entries) == 1
        assert entries[0].inducing == GUClass([], SIGMA)

    def test_zero_reducibility_contributes_nothing(self):
        s = GUCuspidalLabel("s4", reducibility={RHO: HalfInt(0)}, twist_fixed={RHO})
        entries = enumerate_sp([RHO], s, HalfInt(3))
        assert len(entries) == 1
        assert entries[0].datum.jord == ()

    def test_undeclared_reducibility(self):
        s = GUCuspidalLabel("s5", twist_fixed={RHO})
        with pytest.raises(UndeclaredReducibilityError):
            enumerate_sp([RHO], s, HalfInt(3))

    def test_failed_necessary_conditions(self):
        s = GUCuspidalLabel("s6", reducibility={CHI: HalfInt(1)}, twist_fixed={CHI})
        with pytest.raises(InvalidDatumError):
            enumerate_sp([CHI], s, HalfInt(3))

    def test_injectivity_at_data_level(self):
        entries = enumerate_sp([RHO], SIGMA, HalfInt(4))
        seen = {}
        for e in entries:
            assert e.inducing not in seen, (e.datum, seen[e.inducing])
            seen[e.inducing] = e.datum


class TestValidateLJ:
    def test_duplicate_label_fails_first_condition(self):
        j = JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(2)))
        report = validate_lj(LJDatum((j, j), SIGMA))
        assert not report.ok
        assert report.first_violation[0] == "i"

    def test_wrong_length_fails_second_condition(self):
        j = JordSequence(RHO, HalfInt(2), (HalfInt(1),))
        report = validate_lj(LJDatum((j,), SIGMA))
        assert report.first_violation[0] == "ii"

    def test_non_monotone_fails_third_condition(self):
        j = JordSequence(RHO, HalfInt(2), (HalfInt(2), HalfInt(1)))
        report = validate_lj(LJDatum((j,), SIGMA))
        assert report.first_violation[0] == "iii"

    def test_integrality_fails_third_condition(self):
        j = JordSequence(RHO, HalfInt(2), (h(1), HalfInt(2)))
        report = validate_lj(LJDatum((j,), SIGMA))
        assert report.first_violation[0] == "iii"

    def test_strict_floor(self):
        j = JordSequence(RHO, HalfInt(2), (HalfInt(0), HalfInt(2)))
        assert validate_lj(LJDatum((j,), SIGMA)).ok
        report = validate_lj(LJDatum((j,), SIGMA), strict=True)
        assert report.first_violation[0] == "iii"

    def test_valid_datum(self):
        j = JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(3)))
        report = validate_lj(LJDatum((j,), SIGMA))
        assert report.ok and report.first_violation is None


class TestPartialCuspidalSupport:
    def test_anchor_survives_full_restriction(self):
        # every term of the fully cuspidal Jacquet module keeps the anchor,
        # up to a twist tag
        from jacquet import jacquet_by_shape

        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(3))),), SIGMA
        )
        rep = build_inducing_rep(datum)
        shape = (1,) * rep.gl_rank
        for term, _ in jacquet_by_shape(rep, shape).items():
            anchor = term.factors[-1]
            assert anchor.segments == ()
            assert anchor.sigma == SIGMA

    def test_positive_leading_cuspidal_term(self):
        # among all-positive fully cuspidal terms matching the exponent
        # multiset, the canonical one (each segment split top-down, segments
        # in canonical order) occurs exactly once
        from jacquet import (
            GLMonomial,
            TensorTerm,
            TRIVIAL_TWIST,
            jacquet_by_shape,
            multiplicity,
        )

        datum = LJDatum(
            (JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(3))),), SIGMA
        )
        rep = build_inducing_rep(datum)
        shape = (1,) * rep.gl_rank
        blocks = []
        for s in rep.segments:
            for t in range(s.b.twice, s.a.twice - 1, -2):
                blocks.append(GLMonomial([Segment(s.rho, HalfInt.from_twice(t),
                                                  HalfInt.from_twice(t))]))
        target = TensorTerm(tuple(blocks) + (GUClass([], SIGMA, TRIVIAL_TWIST),))
        out = jacquet_by_shape(rep, shape)
        assert multiplicity(out, target) == 1


class TestDatumJSON:
    def test_round_trip(self):
        datum = LJDatum(
            (
                JordSequence(RHO, HalfInt(2), (HalfInt(1), HalfInt(2))),
                JordSequence(RHO2, h(1), (h(3),)),
            ),
            SIGMA,
        )
        obj = lj_to_obj(datum)
        assert obj == {
            "sigma": "sigma",
            "jord": [
                {"rho": "rho", "a": "2", "b": ["1", "2"]},
                {"rho": "rho2", "a": "1/2", "b": ["3/2"]},
            ],
        }
        back = lj_from_obj(obj, lambda n: {"rho": RHO, "rho2": RHO2}[n],
                           lambda n: SIGMA)
        assert back == datum
