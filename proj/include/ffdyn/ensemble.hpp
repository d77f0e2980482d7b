#pragma once

#include <functional>
#include <optional>

#include "ffdyn/dynamics.hpp"
#include "ffdyn/projmap.hpp"
#include "ffdyn/rng.hpp"

namespace ffdyn {

enum class MapKind { polynomial, rational };

const char* to_string(MapKind k);

struct SampledMode {
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct EnsembleSpec {
    std::uint32_t p = 0;  // prime
    std::uint32_t j = 1;  // field is F_{p^j}
    int d = 2;            // degree >= 2
    MapKind kind = MapKind::rational;
    std::optional<SampledMode> sampled;  // nullopt = exhaustive

    bool theorem_hypothesis_holds() const { return p > std::uint32_t(d); }  // gcd(p^j, d!) = 1
};

struct BadLocusReport {
    Int tuple_count;      // q^(2d+2)
    Int non_generating;   // tuples with k(a) != k_j
    Int bad_reduction;    // tuples whose specialization drops degree
    Int bound;            // 2^(2d+2) * p^(j(d+1))
};

struct EnsembleReport {
    Int map_count;                       // distinct maps averaged over
    Rat mean;                            // exact mean, or exact value of the sampled estimator
    Rat se2;                             // squared standard error (0 when exhaustive)
    std::vector<std::uint64_t> histogram;  // histogram[c] = #maps with periodic count c
    bool is_sampled = false;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;

    double stderr_value() const;
};

/// Closed-form count of degree-d maps over a field of the given cardinality:
/// q^(2d-1)(q^2-1) rational functions, q^d(q-1) polynomials.
Int count_maps(const Int& q, int d, MapKind kind);

/// Size of the canonical-representative candidate index space (every distinct
/// map appears exactly once, some indices decode to nothing). Throws
/// BudgetError if it does not fit 64 bits.
std::uint64_t candidate_count(std::uint32_t q, int d, MapKind kind);

/// Decodes candidate index -> canonical map. Returns false for indices whose
/// candidate is not a degree-d map (coefficient tuples failing gcd(f,g) = 1).
/// f and g come out trimmed, in canonical scaling.
bool decode_candidate(const FieldCtx& k, std::uint64_t idx, int d, MapKind kind, poly::Poly& f,
                      poly::Poly& g);

/// Serial stream over every distinct degree-d map, enumeration order fixed by
/// the candidate index space.
void for_each_map(const FieldCtx& k, int d, MapKind kind,
                  const std::function<void(const RatMap&)>& fn);

/// Uniform draw over distinct degree-d maps by rejection from the canonical
/// candidate space. Deterministic in (seed, index) and independent of
/// execution order; throws BudgetError after 10^6 rejections.
RatMap sample_map(const FieldCtx& k, const EnsembleSpec& spec, std::uint64_t index);

/// Mean periodic proportion over the ensemble. Exhaustive mode enumerates
/// every map; sampled mode averages spec.sampled->n_samples draws and reports
/// the squared standard error (sample variance / n). OpenMP-parallel over
/// index ranges; per-thread partials merge by exact integer sums, so the
/// result is identical for every worker count.
EnsembleReport average_periodic(const FieldCtx& k, const EnsembleSpec& spec, int workers,
                                std::uint64_t budget);

/// Exhaustive scan of the full coefficient-tuple space V_j = F_{p^j}^{2d+2}:
/// counts non-generating tuples and bad-reduction tuples (rational kind).
BadLocusReport bad_locus_report(const FieldCtx& k, int d, int workers, std::uint64_t budget);

}  // namespace ffdyn
