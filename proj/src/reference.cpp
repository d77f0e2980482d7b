#include "ffdyn/reference.hpp"

#include <numeric>
#include <stdexcept>

namespace ffdyn::reference {

EnsembleReport average_periodic(const FieldCtx& k, const EnsembleSpec& spec) {
    const std::uint32_t q = k.q();
    EnsembleReport rep;
    rep.histogram.assign(q + 2, 0);
    Int sum = 0;
    Int sumsq = 0;
    std::uint64_t maps = 0;

    auto tally = [&](const RatMap& m) {
        const OrbitCensus c = census(m);
        sum += c.periodic_count;
        sumsq += Int(c.periodic_count) * Int(c.periodic_count);
        ++rep.histogram[c.periodic_count];
        ++maps;
    };

    if (!spec.sampled) {
        for_each_map(k, spec.d, spec.kind, tally);
        rep.map_count = count_maps(Int(q), spec.d, spec.kind);
        if (Int(maps) != rep.map_count) throw std::logic_error("reference: map count mismatch");
        rep.mean = make_rat(sum, Int(maps) * (q + 1));
        rep.se2 = 0;
        return rep;
    }

    for (std::uint64_t i = 0; i < spec.sampled->n_samples; ++i) tally(sample_map(k, spec, i));
    rep.map_count = count_maps(Int(q), spec.d, spec.kind);
    rep.is_sampled = true;
    rep.n_samples = spec.sampled->n_samples;
    rep.seed = spec.sampled->seed;
    const Int n(maps);
    rep.mean = make_rat(sum, n * (q + 1));
    rep.se2 = maps > 1 ? make_rat(sumsq * n - sum * sum, n * n * (n - 1) * Int(q + 1) * Int(q + 1))
                       : Rat(0);
    return rep;
}

BadLocusReport bad_locus_report(const FieldCtx& k, int d) {
    const std::uint32_t q = k.q();
    const unsigned tuple_len = unsigned(2 * d + 2);
    const Int tuple_count = ui_pow(q, tuple_len);
    if (!fits_u64(tuple_count)) throw BudgetError("reference bad locus: tuple space too large");

    std::uint64_t non_gen = 0, bad = 0;
    CoeffTuple tuple{CoeffTuple::Kind::rational, std::vector<Fe>(tuple_len)};
    for (std::uint64_t it = 0, total = to_u64(tuple_count); it < total; ++it) {
        std::uint64_t idx = it;
        // digit i is the coefficient of degree i in f (then in g), matching
        // the kernel's decode; tuple entries are high-first
        for (int i = 0; i <= d; ++i) {
            tuple.entries[std::size_t(d - i)] = Fe(idx % q);
            idx /= q;
        }
        for (int i = 0; i <= d; ++i) {
            tuple.entries[std::size_t(2 * d + 1 - i)] = Fe(idx % q);
            idx /= q;
        }
        if (!tuple_generates(k, tuple)) ++non_gen;
        if (!specialize(k, tuple, d)) ++bad;
    }

    BadLocusReport rep;
    rep.tuple_count = tuple_count;
    rep.non_generating = Int(non_gen);
    rep.bad_reduction = Int(bad);
    rep.bound = int_pow(Int(2), tuple_len) * int_pow(Int(k.p()), unsigned(k.j()) * unsigned(d + 1));
    return rep;
}

}  // namespace ffdyn::reference
