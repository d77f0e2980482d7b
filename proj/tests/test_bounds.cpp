#include <doctest.h>

#include "ffdyn/bounds.hpp"

using namespace ffdyn;
using poly::Poly;

TEST_SUITE("bounds") {

TEST_CASE("worked example: X^2 over F_3 at n = 1") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    const RatMap sq = *normalize(f3, Poly{0, 0, 1}, Poly{1});
    const BoundCheck c = bound_check(sq, 1);

    CHECK(c.image_size == 3);
    CHECK(c.image_ratio == make_rat(3, 4));
    CHECK(c.assumed_fix == make_rat(1, 2));
    CHECK(c.assumed_group_order == 2);
    CHECK(c.rhs_abs_numerator == 28);  // 7 * 1 * 2 * |S_2|
    CHECK(c.lhs_absolute == Rat(2));   // |3/(1/2) - 4|
    CHECK(c.lhs_relative == make_rat(1, 4));
    CHECK(c.satisfied_abs);  // 2 < 28/sqrt(3)
    CHECK(c.satisfied_rel);  // 1/4 < (28/3^{3/2}) * 1/2
}

TEST_CASE("worked example: bijective X^3 over F_5 at n = 1") {
    const FieldCtx f5 = FieldCtx::make(5, 1);
    const RatMap cube = *normalize(f5, Poly{0, 0, 0, 1}, Poly{1});
    const BoundCheck c = bound_check(cube, 1);

    CHECK(c.image_size == 6);
    CHECK(c.image_ratio == Rat(1));
    CHECK(c.assumed_fix == make_rat(2, 3));
    CHECK(c.lhs_relative == make_rat(1, 3));
    CHECK(c.satisfied_rel);  // 1/3 < (126/5^{3/2}) * 2/3
    CHECK(c.satisfied_abs);
}

TEST_CASE("refusals") {
    const FieldCtx f2 = FieldCtx::make(2, 1);
    const RatMap m2 = *normalize(f2, Poly{0, 0, 1}, Poly{1});
    CHECK_THROWS_AS(bound_check(m2, 1), ValidationError);  // gcd(2, 2!) != 1

    const FieldCtx f3 = FieldCtx::make(3, 1);
    const RatMap m3 = *normalize(f3, Poly{0, 0, 0, 1}, Poly{1});
    CHECK_THROWS_AS(bound_check(m3, 1), ValidationError);  // gcd(3, 3!) != 1

    const FieldCtx f5 = FieldCtx::make(5, 1);
    const RatMap m5 = *normalize(f5, Poly{0, 0, 1}, Poly{1});
    CHECK_THROWS_AS(bound_check(m5, 0), ValidationError);
    CHECK_THROWS_AS(bound_check(m5, 30), BudgetError);  // exact fix capped at n = 24
}

TEST_CASE("square-root comparisons are decided by squaring") {
    // a < b/sqrt(q): 2 < 28/sqrt(3) true since 4*3 < 784; 17 < 28/sqrt(3)
    // false since 289*3 > 784
    CHECK(lt_scaled_inv_sqrt_pow(Rat(2), Rat(28), Int(3), 1));
    CHECK_FALSE(lt_scaled_inv_sqrt_pow(Rat(17), Rat(28), Int(3), 1));
    CHECK(lt_scaled_inv_sqrt_pow(make_rat(1, 4), Rat(14), Int(3), 3));
    CHECK_FALSE(lt_scaled_inv_sqrt_pow(Rat(3), Rat(14), Int(3), 3));  // 9*27 > 196
}

TEST_CASE("vacuous regime: every map satisfies the absolute inequality") {
    const FieldCtx f5 = FieldCtx::make(5, 1);
    EnsembleSpec spec{5, 1, 2, MapKind::polynomial, std::nullopt};
    const BoundSurvey s = bound_survey(f5, spec, 1, 1, 1000000);
    CHECK(s.map_count == 100);

    // rhs = 28/sqrt(5) exceeds the exact sup of the lhs over all image sizes,
    // so the fraction must be exactly 1 regardless of the dynamics
    const Rat sup = lhs_absolute_sup(5, make_rat(1, 2));
    CHECK(sup == Rat(6));
    CHECK(lt_scaled_inv_sqrt_pow(sup, Rat(28), Int(5), 1));
    CHECK(s.frac_abs() == Rat(1));
    CHECK(s.frac_rel() == Rat(1));
    CHECK(s.satisfied_abs_count == 100);
}

TEST_CASE("survey is deterministic") {
    const FieldCtx f5 = FieldCtx::make(5, 1);
    EnsembleSpec spec{5, 1, 2, MapKind::rational, SampledMode{200, 77}};
    const BoundSurvey a = bound_survey(f5, spec, 2, 1, 1000000);
    const BoundSurvey b = bound_survey(f5, spec, 2, 4, 1000000);
    CHECK(a.map_count == b.map_count);
    CHECK(a.satisfied_abs_count == b.satisfied_abs_count);
    CHECK(a.satisfied_rel_count == b.satisfied_rel_count);
    CHECK(a.lhs_rel_min == b.lhs_rel_min);
    CHECK(a.lhs_rel_max == b.lhs_rel_max);
    CHECK(a.lhs_hist == b.lhs_hist);
}

}  // TEST_SUITE
