#include <doctest.h>

#include <set>

#include "ffdyn/ensemble.hpp"
#include "ffdyn/projmap.hpp"

using namespace ffdyn;
using poly::Poly;

namespace {

CoeffTuple rat_tuple(std::initializer_list<Fe> entries) {
    return CoeffTuple{CoeffTuple::Kind::rational, entries};
}

}  // namespace

TEST_SUITE("projmap") {

TEST_CASE("normalize clears common factors and scales canonically") {
    const FieldCtx f3 = FieldCtx::make(3, 1);

    // (X^2+X)/X -> (X+1)/1
    auto m = normalize(f3, Poly{0, 1, 1}, Poly{0, 1});
    REQUIRE(m.has_value());
    CHECK(m->d == 1);
    CHECK(m->num == Poly{1, 1});
    CHECK(m->den == Poly{1});

    // X^2/1 already reduced
    m = normalize(f3, Poly{0, 0, 1}, Poly{1});
    CHECK(m->d == 2);
    CHECK(m->num == Poly{0, 0, 1});

    // 2X^2 / 2 -> X^2/1 after scaling by the unit
    m = normalize(f3, Poly{0, 0, 2}, Poly{2});
    CHECK(m->d == 2);
    CHECK(m->num == Poly{0, 0, 1});
    CHECK(m->den == Poly{1});

    // g == 0 is degenerate, both zero is an error
    CHECK_FALSE(normalize(f3, Poly{1}, Poly{}).has_value());
    CHECK_THROWS_AS(normalize(f3, Poly{}, Poly{}), ValidationError);

    // zero function normalizes to 0/1 of degree 0
    m = normalize(f3, Poly{}, Poly{0, 2});
    CHECK(m->d == 0);
    CHECK(m->num.empty());
    CHECK(m->den == Poly{1});
}

TEST_CASE("normalizing twice is the identity") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    for_each_map(f3, 2, MapKind::rational, [&](const RatMap& m) {
        const auto again = normalize(f3, m.num, m.den);
        REQUIRE(again.has_value());
        CHECK(again->d == m.d);
        CHECK(again->num == m.num);
        CHECK(again->den == m.den);
    });
}

TEST_CASE("eval at finite points, poles and infinity") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    const RatMap sq = *normalize(f3, Poly{0, 0, 1}, Poly{1});
    CHECK(eval(sq, ProjPoint::finite(2)) == ProjPoint::finite(1));  // 4 mod 3
    CHECK(eval(sq, ProjPoint::infinity()) == ProjPoint::infinity());

    const RatMap inv_x = *normalize(f3, Poly{1}, Poly{0, 1});
    CHECK(eval(inv_x, ProjPoint::finite(0)) == ProjPoint::infinity());
    CHECK(eval(inv_x, ProjPoint::infinity()) == ProjPoint::finite(0));
}

TEST_CASE("eval is total and fibers have size <= d") {
    auto check_map = [](const RatMap& m) {
        const FieldCtx& k = *m.ctx;
        std::vector<int> fiber(k.q() + 1, 0);
        for (std::uint32_t i = 0; i <= k.q(); ++i) {
            const ProjPoint img = eval(m, ProjPoint::from_index(i, k));
            ++fiber[img.index(k)];
        }
        for (int c : fiber) CHECK(c <= m.d);
    };
    const FieldCtx f3 = FieldCtx::make(3, 1);
    for_each_map(f3, 2, MapKind::rational, check_map);

    // seeded rational maps over F_49, degrees 2 and 3
    const FieldCtx f49 = FieldCtx::make(7, 2);
    for (int d : {2, 3}) {
        EnsembleSpec spec{7, 2, d, MapKind::rational, SampledMode{0, 99}};
        for (std::uint64_t i = 0; i < 50; ++i) check_map(sample_map(f49, spec, i));
    }
}

TEST_CASE("derivative vanishing detects inseparability") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    const FieldCtx f5 = FieldCtx::make(5, 1);
    CHECK_FALSE(derivative_is_zero(*normalize(f3, Poly{0, 0, 1}, Poly{1})));        // X^2 over F_3
    CHECK(derivative_is_zero(*normalize(f3, Poly{0, 0, 0, 1}, Poly{1})));           // X^3 over F_3
    CHECK_FALSE(derivative_is_zero(*normalize(f5, Poly{0, 0, 0, 1}, Poly{1})));     // X^3 over F_5
    CHECK(derivative_is_zero(*normalize(f3, Poly{0, 0, 0, 1, 0, 0, 1}, Poly{1})));  // X^6+X^3
}

TEST_CASE("resultant examples and symmetry") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    CHECK(poly::resultant(f3, Poly{0, 0, 1}, Poly{1}) == fe_one);   // res(X^2, 1)
    CHECK(poly::resultant(f3, Poly{0, 1}, Poly{0, 1}) == fe_zero);  // res(X, X)
    // res(X^2+1, X+1) over F_3: evaluate f at the root -1 of g -> 2
    CHECK(poly::resultant(f3, Poly{1, 0, 1}, Poly{1, 1}) == 2);

    // res(f, g) = (-1)^{deg f deg g} res(g, f), exhaustive over degree <= 2
    for (std::uint32_t fi = 1; fi < 27; ++fi)
        for (std::uint32_t gi = 1; gi < 27; ++gi) {
            const Poly f = poly::trim({Fe(fi % 3), Fe(fi / 3 % 3), Fe(fi / 9)});
            const Poly g = poly::trim({Fe(gi % 3), Fe(gi / 3 % 3), Fe(gi / 9)});
            const Fe lhs = poly::resultant(f3, f, g);
            Fe rhs = poly::resultant(f3, g, f);
            if ((poly::degree(f) * poly::degree(g)) % 2 == 1) rhs = f3.neg(rhs);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("resultant vanishes exactly when a common factor exists") {
    const FieldCtx f4 = FieldCtx::make(2, 2);
    for (std::uint32_t fi = 1; fi < 64; ++fi)
        for (std::uint32_t gi = 1; gi < 64; ++gi) {
            const Poly f = poly::trim({Fe(fi % 4), Fe(fi / 4 % 4), Fe(fi / 16)});
            const Poly g = poly::trim({Fe(gi % 4), Fe(gi / 4 % 4), Fe(gi / 16)});
            const bool share = poly::degree(poly::gcd_monic(f4, f, g)) > 0;
            CHECK((poly::resultant(f4, f, g) == fe_zero) == share);
        }
}

TEST_CASE("specialize: good and bad reduction") {
    const FieldCtx f3 = FieldCtx::make(3, 1);

    auto good = specialize(f3, rat_tuple({1, 0, 0, 0, 0, 1}), 2);  // X^2 / 1
    REQUIRE(good.has_value());
    CHECK(good->d == 2);
    CHECK(good->num == Poly{0, 0, 1});
    CHECK(good->den == Poly{1});

    CHECK_FALSE(specialize(f3, rat_tuple({1, 0, 0, 1, 0, 0}), 2).has_value());  // X^2/X^2
    CHECK_FALSE(specialize(f3, rat_tuple({0, 0, 0, 0, 0, 1}), 2).has_value());  // f = 0
    CHECK_FALSE(specialize(f3, rat_tuple({0, 0, 0, 0, 0, 0}), 2).has_value());  // all zero
    CHECK_FALSE(specialize(f3, rat_tuple({0, 1, 0, 0, 0, 1}), 2).has_value());  // degree 1

    // polynomial kind
    const CoeffTuple pt{CoeffTuple::Kind::polynomial, {0, 1, 0}};
    CHECK_FALSE(specialize(f3, pt, 2).has_value());  // X has degree 1, rejected
}

TEST_CASE("gcd route and resultant route agree on every tuple") {
    // all 3^6 = 729 tuples at q=3, d=2, plus all 4^6 at q=4
    for (const auto& [p, j] : {std::pair{3u, 1u}, {2u, 2u}}) {
        const FieldCtx k = FieldCtx::make(p, j);
        const std::uint64_t q = k.q();
        std::uint64_t good_count = 0;
        std::uint64_t total = 1;
        for (int i = 0; i < 6; ++i) total *= q;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            CoeffTuple t{CoeffTuple::Kind::rational, std::vector<Fe>(6)};
            std::uint64_t v = idx;
            for (int i = 0; i < 6; ++i) {
                t.entries[std::size_t(i)] = Fe(v % q);
                v /= q;
            }
            const bool via_gcd = specialize(k, t, 2).has_value();
            CHECK(via_gcd == good_reduction_by_resultant(k, t, 2));
            if (via_gcd) ++good_count;
        }
        // each degree-2 map has exactly (q-1) scalar representatives
        CHECK(Int(good_count) == (q - 1) * count_maps(Int(q), 2, MapKind::rational));
    }
}

TEST_CASE("tuple_generates") {
    const FieldCtx f4 = FieldCtx::make(2, 2);
    CHECK_FALSE(tuple_generates(f4, rat_tuple({0, 0, 0, 0, 0, 0})));
    CHECK(tuple_generates(f4, rat_tuple({2, 0, 0, 0, 0, 1})));  // contains x, degree 2

    const FieldCtx f5 = FieldCtx::make(5, 1);
    CHECK(tuple_generates(f5, rat_tuple({0, 0, 0, 0, 0, 0})));  // j = 1: always
}

TEST_CASE("map text roundtrip") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    for_each_map(f3, 2, MapKind::rational, [&](const RatMap& m) {
        const RatMap back = RatMap::parse(f3, m.to_text());
        CHECK(back.d == m.d);
        CHECK(back.num == m.num);
        CHECK(back.den == m.den);
    });
    const FieldCtx f9 = FieldCtx::make(3, 2);
    const RatMap m = *normalize(f9, Poly{5, 7, 1}, Poly{0, 3});
    const RatMap back = RatMap::parse(f9, m.to_text());
    CHECK(back.num == m.num);
    CHECK(back.den == m.den);

    CHECK_THROWS_AS(RatMap::parse(f3, "2; 1 1"), ValidationError);
    CHECK_THROWS_AS(RatMap::parse(f3, "2; 0 1; 1"), ValidationError);  // degree mismatch
}

}  // TEST_SUITE
