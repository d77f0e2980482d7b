#include "ffdyn/ensemble.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffdyn {

const char* to_string(MapKind k) { return k == MapKind::polynomial ? "polynomial" : "rational"; }

double EnsembleReport::stderr_value() const { return std::sqrt(se2.get_d()); }

Int count_maps(const Int& q, int d, MapKind kind) {
    if (d < 1) throw ValidationError("count_maps: degree must be >= 1");
    if (kind == MapKind::rational) return int_pow(q, 2 * unsigned(d) - 1) * (q * q - 1);
    return int_pow(q, unsigned(d)) * (q - 1);
}

namespace {

constexpr int kMaxDegree = 8;

std::uint64_t u64_pow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// raw coefficient buffers, trimmed lengths; degree cap keeps hot loops
// allocation-free
struct RawMap {
    std::array<Fe, kMaxDegree + 1> f{}, g{};
    int fn = 0, gn = 0;  // number of coefficients (degree + 1); 0 = zero polynomial
};

int trimmed_len(const std::array<Fe, kMaxDegree + 1>& c, int n) {
    while (n > 0 && c[std::size_t(n) - 1] == fe_zero) --n;
    return n;
}

// Euclid on stack buffers; true iff gcd is a nonzero constant
bool coprime_smalldeg(const FieldCtx& k, const RawMap& m) {
    std::array<Fe, kMaxDegree + 1> a = m.f, b = m.g;
    int an = m.fn, bn = m.gn;
    while (bn > 0) {
        // a mod b
        const Fe lead_inv = k.inv(b[std::size_t(bn) - 1]);
        while (an >= bn) {
            const Fe c = k.mul(a[std::size_t(an) - 1], lead_inv);
            const int sh = an - bn;
            for (int i = 0; i < bn; ++i)
                a[std::size_t(sh + i)] = k.sub(a[std::size_t(sh + i)], k.mul(c, b[std::size_t(i)]));
            an = trimmed_len(a, an - 1);
        }
        std::swap(a, b);
        std::swap(an, bn);
    }
    return an == 1;
}

// candidate spaces (canonical representatives, each distinct map exactly once):
//   rational: [0, q^(2d+1)) monic-denominator candidates (g = X^d + low digits,
//             f free), then [q^(2d+1), q^(2d+1) + q^(2d)) monic-numerator
//             candidates (f = X^d + low digits, g any nonzero of degree < d);
//             gcd(f, g) = 1 filters both blocks.
//   polynomial: [0, q^d (q-1)): f = X^d + low digits, g the nonzero constant
//               indexed by the high digit; every candidate is valid.
bool decode_raw(const FieldCtx& k, std::uint64_t idx, int d, MapKind kind, RawMap& m) {
    const std::uint64_t q = k.q();
    if (kind == MapKind::polynomial) {
        for (int i = 0; i < d; ++i) {
            m.f[std::size_t(i)] = Fe(idx % q);
            idx /= q;
        }
        m.f[std::size_t(d)] = fe_one;
        m.fn = d + 1;
        m.g[0] = Fe(idx + 1);  // packed values 1..q-1 are exactly the nonzero elements
        m.gn = 1;
        return true;
    }
    const std::uint64_t block_a = u64_pow(q, unsigned(2 * d + 1));
    if (idx < block_a) {
        for (int i = 0; i <= d; ++i) {
            m.f[std::size_t(i)] = Fe(idx % q);
            idx /= q;
        }
        for (int i = 0; i < d; ++i) {
            m.g[std::size_t(i)] = Fe(idx % q);
            idx /= q;
        }
        m.g[std::size_t(d)] = fe_one;
        m.fn = trimmed_len(m.f, d + 1);
        m.gn = d + 1;
    } else {
        idx -= block_a;
        std::uint64_t gidx = idx % u64_pow(q, unsigned(d));
        std::uint64_t fidx = idx / u64_pow(q, unsigned(d));
        if (gidx == 0) return false;  // g must be nonzero
        for (int i = 0; i < d; ++i) {
            m.f[std::size_t(i)] = Fe(fidx % q);
            fidx /= q;
        }
        m.f[std::size_t(d)] = fe_one;
        m.fn = d + 1;
        for (int i = 0; i < d; ++i) {
            m.g[std::size_t(i)] = Fe(gidx % q);
            gidx /= q;
        }
        m.g[std::size_t(d)] = fe_zero;
        m.gn = trimmed_len(m.g, d);
    }
    return coprime_smalldeg(k, m);
}

Fe horner(const FieldCtx& k, const std::array<Fe, kMaxDegree + 1>& c, int n, Fe x) {
    Fe acc = fe_zero;
    for (int i = n; i-- > 0;) acc = k.add(k.mul(acc, x), c[std::size_t(i)]);
    return acc;
}

void build_graph_raw(const FieldCtx& k, const RawMap& m, int d, DynWorkspace& ws) {
    const std::uint32_t q = k.q();
    ws.next.resize(q + 1);
    for (Fe x = 0; x < q; ++x) {
        const Fe fx = horner(k, m.f, m.fn, x);
        const Fe gx = horner(k, m.g, m.gn, x);
        ws.next[x] = gx == fe_zero ? q : k.div(fx, gx);
    }
    const Fe fd = m.fn == d + 1 ? m.f[std::size_t(d)] : fe_zero;
    const Fe gd = m.gn == d + 1 ? m.g[std::size_t(d)] : fe_zero;
    ws.next[q] = gd == fe_zero ? q : k.div(fd, gd);
}

RatMap raw_to_map(const FieldCtx& k, const RawMap& m, int d) {
    return RatMap{d, poly::Poly(m.f.begin(), m.f.begin() + m.fn),
                  poly::Poly(m.g.begin(), m.g.begin() + m.gn), &k};
}

void check_spec(const FieldCtx& k, int d, MapKind) {
    if (d < 1 || d > kMaxDegree) throw ValidationError("degree must be in [1, 8]");
    (void)k;
}

struct Accum {
    std::uint64_t maps = 0;
    std::uint64_t sum = 0;  // sum of periodic counts
    unsigned __int128 sumsq = 0;
    std::vector<std::uint64_t> hist;

    explicit Accum(std::uint32_t q) : hist(q + 2, 0) {}
    void add(std::uint32_t c) {
        ++maps;
        sum += c;
        sumsq += (unsigned __int128)(c) * c;
        ++hist[c];
    }
    void merge(const Accum& o) {
        maps += o.maps;
        sum += o.sum;
        sumsq += o.sumsq;
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += o.hist[i];
    }
};

Int int_from_u128(unsigned __int128 v) {
    Int hi(std::uint64_t(v >> 64));
    return (hi << 64) + Int(std::uint64_t(v));
}

int clamp_workers(int workers) {
    if (workers < 1) workers = 1;
#ifdef _OPENMP
    return workers;
#else
    return 1;
#endif
}

}  // namespace

std::uint64_t candidate_count(std::uint32_t q, int d, MapKind kind) {
    Int n = kind == MapKind::polynomial
                ? Int(ui_pow(q, unsigned(d)) * (Int(q) - 1))
                : Int(ui_pow(q, unsigned(2 * d + 1)) + ui_pow(q, unsigned(2 * d)));
    if (!fits_u64(n)) throw BudgetError("candidate index space exceeds 64 bits");
    return to_u64(n);
}

bool decode_candidate(const FieldCtx& k, std::uint64_t idx, int d, MapKind kind, poly::Poly& f,
                      poly::Poly& g) {
    check_spec(k, d, kind);
    RawMap m;
    if (!decode_raw(k, idx, d, kind, m)) return false;
    f.assign(m.f.begin(), m.f.begin() + m.fn);
    g.assign(m.g.begin(), m.g.begin() + m.gn);
    return true;
}

void for_each_map(const FieldCtx& k, int d, MapKind kind,
                  const std::function<void(const RatMap&)>& fn) {
    check_spec(k, d, kind);
    const std::uint64_t total = candidate_count(k.q(), d, kind);
    RawMap m;
    for (std::uint64_t idx = 0; idx < total; ++idx)
        if (decode_raw(k, idx, d, kind, m)) fn(raw_to_map(k, m, d));
}

RatMap sample_map(const FieldCtx& k, const EnsembleSpec& spec, std::uint64_t index) {
    if (!spec.sampled) throw ValidationError("sample_map requires sampled mode");
    check_spec(k, spec.d, spec.kind);
    const std::uint64_t total = candidate_count(k.q(), spec.d, spec.kind);
    SplitMix64 rng = stream_for(spec.sampled->seed, index);
    RawMap m;
    for (int tries = 0; tries < 1000000; ++tries) {
        const std::uint64_t idx = uniform_below(rng, total);
        if (decode_raw(k, idx, spec.d, spec.kind, m)) return raw_to_map(k, m, spec.d);
    }
    throw BudgetError("sample_map: rejection cap of 10^6 reached");
}

EnsembleReport average_periodic(const FieldCtx& k, const EnsembleSpec& spec, int workers,
                                std::uint64_t budget) {
    check_spec(k, spec.d, spec.kind);
    const std::uint32_t q = k.q();
    const int nthreads = clamp_workers(workers);

    std::vector<Accum> partials;
    std::uint64_t total_iters;
    const bool exhaustive = !spec.sampled.has_value();
    const std::uint64_t cand_total = candidate_count(q, spec.d, spec.kind);

    if (exhaustive) {
        const Int expected = count_maps(Int(q), spec.d, spec.kind);
        if (expected > Int(budget))
            throw BudgetError("exhaustive ensemble of " + expected.get_str() +
                              " maps exceeds budget " + std::to_string(budget));
        total_iters = cand_total;
    } else {
        if (spec.sampled->n_samples == 0) throw ValidationError("sampled mode needs n_samples >= 1");
        if (spec.sampled->n_samples > budget)
            throw BudgetError("sample count exceeds budget");
        total_iters = spec.sampled->n_samples;
    }
    if (total_iters >> 62) throw BudgetError("iteration space exceeds 2^62");

    partials.assign(std::size_t(nthreads), Accum(q));

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
#else
        const int tid = 0;
#endif
        Accum& acc = partials[std::size_t(tid)];
        DynWorkspace ws;
        RawMap m;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < std::int64_t(total_iters); ++i) {
            if (exhaustive) {
                if (!decode_raw(k, std::uint64_t(i), spec.d, spec.kind, m)) continue;
            } else {
                SplitMix64 rng = stream_for(spec.sampled->seed, std::uint64_t(i));
                bool ok = false;
                for (int tries = 0; tries < 1000000 && !ok; ++tries)
                    ok = decode_raw(k, uniform_below(rng, cand_total), spec.d, spec.kind, m);
                if (!ok) continue;  // diagnosed below via the merged map count
            }
            build_graph_raw(k, m, spec.d, ws);
            acc.add(periodic_count_from_graph(ws, q + 1));
        }
    }

    Accum total(q);
    for (const auto& part : partials) total.merge(part);

    EnsembleReport rep;
    rep.histogram = std::move(total.hist);
    if (exhaustive) {
        const Int expected = count_maps(Int(q), spec.d, spec.kind);
        if (Int(total.maps) != expected)
            throw std::logic_error("enumerated map count " + std::to_string(total.maps) +
                                   " != closed-form count " + expected.get_str());
        rep.map_count = expected;
        rep.mean = make_rat(Int(total.sum), Int(total.maps) * (q + 1));
        rep.se2 = 0;
    } else {
        if (total.maps != spec.sampled->n_samples)
            throw BudgetError("sample_map: rejection cap of 10^6 reached");
        rep.map_count = count_maps(Int(q), spec.d, spec.kind);
        rep.is_sampled = true;
        rep.n_samples = spec.sampled->n_samples;
        rep.seed = spec.sampled->seed;
        const Int n(total.maps);
        const Int sum(total.sum);
        rep.mean = make_rat(sum, n * (q + 1));
        if (total.maps > 1) {
            // sample variance of the proportions, over n: exact rational
            const Int num = int_from_u128(total.sumsq) * n - sum * sum;
            const Int den = n * n * (n - 1) * Int(q + 1) * Int(q + 1);
            rep.se2 = make_rat(num, den);
        } else {
            rep.se2 = 0;
        }
    }
    return rep;
}

BadLocusReport bad_locus_report(const FieldCtx& k, int d, int workers, std::uint64_t budget) {
    check_spec(k, d, MapKind::rational);
    const std::uint32_t q = k.q();
    const unsigned tuple_len = unsigned(2 * d + 2);
    const Int tuple_count_z = ui_pow(q, tuple_len);
    if (!fits_u64(tuple_count_z) || to_u64(tuple_count_z) > budget)
        throw BudgetError("tuple space of " + tuple_count_z.get_str() + " exceeds budget " +
                          std::to_string(budget));
    const std::uint64_t total = to_u64(tuple_count_z);
    const int nthreads = clamp_workers(workers);

    std::vector<std::uint8_t> deg_of(q);
    for (Fe a = 0; a < q; ++a) deg_of[a] = std::uint8_t(k.subfield_degree(a));

    std::uint64_t non_gen = 0, bad = 0;
#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads) reduction(+ : non_gen, bad)
#endif
    {
        RawMap m;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t it = 0; it < std::int64_t(total); ++it) {
            std::uint64_t idx = std::uint64_t(it);
            std::uint32_t l = 1;
            // digits low-to-high: f coefficients low-to-high, then g
            for (int i = 0; i <= d; ++i) {
                const Fe c = Fe(idx % q);
                idx /= q;
                m.f[std::size_t(i)] = c;
                l = std::lcm(l, std::uint32_t(deg_of[c]));
            }
            for (int i = 0; i <= d; ++i) {
                const Fe c = Fe(idx % q);
                idx /= q;
                m.g[std::size_t(i)] = c;
                l = std::lcm(l, std::uint32_t(deg_of[c]));
            }
            if (l != k.j()) ++non_gen;
            m.fn = trimmed_len(m.f, d + 1);
            m.gn = trimmed_len(m.g, d + 1);
            // good reduction: raw top degree is d and nothing cancels
            const bool good = std::max(m.fn, m.gn) == d + 1 && coprime_smalldeg(k, m);
            if (!good) ++bad;
        }
    }

    BadLocusReport rep;
    rep.tuple_count = tuple_count_z;
    rep.non_generating = Int(non_gen);
    rep.bad_reduction = Int(bad);
    rep.bound = int_pow(Int(2), tuple_len) * int_pow(Int(k.p()), unsigned(k.j()) * unsigned(d + 1));
    return rep;
}

}  // namespace ffdyn
