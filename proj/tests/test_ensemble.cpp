#include <doctest.h>

#include <set>
#include <string>

#include "ffdyn/reference.hpp"

using namespace ffdyn;

namespace {

constexpr std::uint64_t kBudget = 20000000;

bool reports_equal(const EnsembleReport& a, const EnsembleReport& b) {
    return a.map_count == b.map_count && a.mean == b.mean && a.se2 == b.se2 &&
           a.histogram == b.histogram;
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("closed-form map counts") {
    CHECK(count_maps(Int(3), 2, MapKind::rational) == 216);
    CHECK(count_maps(Int(3), 2, MapKind::polynomial) == 18);
    CHECK(count_maps(Int(2), 2, MapKind::rational) == 24);
    CHECK(count_maps(Int(5), 2, MapKind::rational) == 3000);
    CHECK(count_maps(Int(9), 2, MapKind::rational) == 58320);
    CHECK(count_maps(Int(4), 3, MapKind::polynomial) == 192);
    // no overflow at large q: big-integer result
    CHECK(count_maps(ui_pow(2, 20), 3, MapKind::rational) ==
          int_pow(ui_pow(2, 20), 5) * (ui_pow(2, 40) - 1));
}

TEST_CASE("enumeration yields each distinct map exactly once") {
    const FieldCtx f2 = FieldCtx::make(2, 1);
    std::set<std::string> stream;
    for_each_map(f2, 2, MapKind::rational, [&](const RatMap& m) {
        CHECK(m.d == 2);
        stream.insert(m.to_text());
    });
    CHECK(stream.size() == 24);

    // cross-check: normalize all 2^6 raw tuples and deduplicate
    std::set<std::string> via_tuples;
    for (std::uint32_t idx = 0; idx < 64; ++idx) {
        CoeffTuple t{CoeffTuple::Kind::rational, std::vector<Fe>(6)};
        std::uint32_t v = idx;
        for (int i = 0; i < 6; ++i) {
            t.entries[std::size_t(i)] = Fe(v % 2);
            v /= 2;
        }
        if (const auto m = specialize(f2, t, 2)) via_tuples.insert(m->to_text());
    }
    CHECK(via_tuples == stream);

    const FieldCtx f3 = FieldCtx::make(3, 1);
    std::set<std::string> polys;
    std::uint64_t n = 0;
    for_each_map(f3, 2, MapKind::polynomial, [&](const RatMap& m) {
        ++n;
        polys.insert(m.to_text());
        CHECK(poly::degree(m.den) == 0);  // polynomial maps have constant denominator
    });
    CHECK(n == 18);
    CHECK(polys.size() == 18);
}

TEST_CASE("sampling is deterministic in (seed, index)") {
    const FieldCtx k = FieldCtx::make(3, 2);
    EnsembleSpec spec{3, 2, 2, MapKind::rational, SampledMode{0, 42}};
    for (std::uint64_t i = 0; i < 20; ++i) {
        const RatMap a = sample_map(k, spec, i);
        const RatMap b = sample_map(k, spec, i);
        CHECK(a.to_text() == b.to_text());
        CHECK(a.d == 2);
    }
    // a different seed changes at least one of the first draws
    EnsembleSpec other{3, 2, 2, MapKind::rational, SampledMode{0, 43}};
    bool differs = false;
    for (std::uint64_t i = 0; i < 20 && !differs; ++i)
        differs = sample_map(k, spec, i).to_text() != sample_map(k, other, i).to_text();
    CHECK(differs);
}

TEST_CASE("exhaustive means match the independent enumeration") {
    const FieldCtx f3 = FieldCtx::make(3, 1);
    EnsembleSpec spec{3, 1, 2, MapKind::polynomial, std::nullopt};
    const EnsembleReport rep = average_periodic(f3, spec, 1, kBudget);
    CHECK(rep.map_count == 18);
    CHECK(rep.mean == make_rat(2, 3));
    CHECK(rep.se2 == 0);
    CHECK(rep.histogram[2] == 6);
    CHECK(rep.histogram[3] == 12);

    spec.kind = MapKind::rational;
    const EnsembleReport rat = average_periodic(f3, spec, 1, kBudget);
    CHECK(rat.mean == make_rat(19, 36));
    CHECK(rat.histogram[1] == 48);
    CHECK(rat.histogram[2] == 96);
    CHECK(rat.histogram[3] == 72);

    const FieldCtx f2 = FieldCtx::make(2, 1);
    EnsembleSpec spec2{2, 1, 2, MapKind::rational, std::nullopt};
    CHECK(average_periodic(f2, spec2, 1, kBudget).mean == make_rat(2, 3));

    const FieldCtx f5 = FieldCtx::make(5, 1);
    EnsembleSpec spec5p{5, 1, 2, MapKind::polynomial, std::nullopt};
    CHECK(average_periodic(f5, spec5p, 1, kBudget).mean == make_rat(17, 30));
    EnsembleSpec spec5r{5, 1, 2, MapKind::rational, std::nullopt};
    CHECK(average_periodic(f5, spec5r, 1, kBudget).mean == make_rat(21, 50));
}

TEST_CASE("kernel agrees with the serial reference, any worker count") {
    const FieldCtx k = FieldCtx::make(3, 1);
    for (MapKind kind : {MapKind::polynomial, MapKind::rational}) {
        EnsembleSpec spec{3, 1, 2, kind, std::nullopt};
        const EnsembleReport serial = reference::average_periodic(k, spec);
        CHECK(reports_equal(serial, average_periodic(k, spec, 1, kBudget)));
        CHECK(reports_equal(serial, average_periodic(k, spec, 4, kBudget)));
    }

    EnsembleSpec sampled{3, 1, 2, MapKind::rational, SampledMode{500, 9}};
    const EnsembleReport serial = reference::average_periodic(k, sampled);
    CHECK(serial.is_sampled);
    CHECK(serial.se2 > 0);
    CHECK(reports_equal(serial, average_periodic(k, sampled, 1, kBudget)));
    CHECK(reports_equal(serial, average_periodic(k, sampled, 4, kBudget)));
}

TEST_CASE("sampled mean lands within three standard errors of the exact mean") {
    const FieldCtx k = FieldCtx::make(3, 1);
    EnsembleSpec exact{3, 1, 2, MapKind::polynomial, std::nullopt};
    EnsembleSpec sampled{3, 1, 2, MapKind::polynomial, SampledMode{2000, 12345}};
    const Rat exact_mean = average_periodic(k, exact, 1, kBudget).mean;
    const EnsembleReport est = average_periodic(k, sampled, 1, kBudget);
    const Rat delta = est.mean - exact_mean;
    CHECK(delta * delta <= 9 * est.se2);  // exact comparison, no floats
}

TEST_CASE("budget enforcement") {
    const FieldCtx k = FieldCtx::make(3, 1);
    EnsembleSpec spec{3, 1, 2, MapKind::rational, std::nullopt};
    CHECK_THROWS_AS(average_periodic(k, spec, 1, 100), BudgetError);
    EnsembleSpec sampled{3, 1, 2, MapKind::rational, SampledMode{1000, 0}};
    CHECK_THROWS_AS(average_periodic(k, sampled, 1, 100), BudgetError);
    CHECK_THROWS_AS(candidate_count(1u << 20, 3, MapKind::rational), BudgetError);
}

TEST_CASE("bad locus kernel agrees with the specialize-based reference") {
    struct Cell {
        std::uint32_t p, j;
        int d;
        std::uint64_t non_gen, bad;
    };
    // frozen from closed forms: bad = q^6 - (q-1) q^3 (q^2-1); non-generating
    // at j=2 counts tuples with every coordinate in the prime field
    for (const Cell& c : {Cell{2, 2, 2, 64, 1216}, Cell{3, 1, 2, 0, 297}}) {
        const FieldCtx k = FieldCtx::make(c.p, c.j);
        const BadLocusReport fast = bad_locus_report(k, c.d, 2, kBudget);
        const BadLocusReport ref = reference::bad_locus_report(k, c.d);
        CHECK(fast.non_generating == ref.non_generating);
        CHECK(fast.bad_reduction == ref.bad_reduction);
        CHECK(fast.non_generating == Int(c.non_gen));
        CHECK(fast.bad_reduction == Int(c.bad));
        CHECK(fast.non_generating <= fast.bound);
    }
}

}  // TEST_SUITE
