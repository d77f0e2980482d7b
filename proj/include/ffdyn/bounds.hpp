#pragma once

#include <array>

#include "ffdyn/ensemble.hpp"
#include "ffdyn/wreath.hpp"

namespace ffdyn {

/// DIAGNOSTIC evaluation of the image-size inequalities for one map at
/// iterate n, with the Galois data replaced by its generic values
/// (G = [S_d]^n, fix = f_n). A violated inequality flags a map whose actual
/// Galois group is non-generic, not a bug. All comparisons against q^{1/2}
/// and q^{3/2} are decided exactly by squaring.
struct BoundCheck {
    std::uint32_t q = 0;
    int d = 0;
    int n = 0;
    std::uint32_t image_size = 0;  // |phi^n(P^1)|
    Rat image_ratio;               // image_size / (q+1)
    Rat assumed_fix;               // f_n, exact
    Int assumed_group_order;       // |[S_d]^n|
    Rat lhs_absolute;              // | image_size/fix - (q+1) |
    Int rhs_abs_numerator;         // 7nd|G|; the bound is this / sqrt(q)
    Rat lhs_relative;              // | image_ratio - fix |
    bool satisfied_abs = false;    // lhs_absolute < 7nd|G| / q^{1/2}
    bool satisfied_rel = false;    // lhs_relative < (7nd|G| / q^{3/2}) * fix
};

/// Preconditions: the map is separable (derivative not identically zero) and
/// gcd(q, d!) = 1, i.e. p > d — otherwise the tameness assumption behind the
/// inequality has no generic justification and the check refuses to run.
BoundCheck bound_check(const RatMap& map, int n);

struct BoundSurvey {
    std::uint64_t map_count = 0;
    std::uint64_t satisfied_abs_count = 0;
    std::uint64_t satisfied_rel_count = 0;
    Rat lhs_rel_min, lhs_rel_max;
    std::array<std::uint64_t, 10> lhs_hist{};  // lhs_relative binned over [0, 1)

    Rat frac_abs() const { return make_rat(Int(satisfied_abs_count), Int(map_count)); }
    Rat frac_rel() const { return make_rat(Int(satisfied_rel_count), Int(map_count)); }
};

/// bound_check aggregated over an exhaustive ensemble (sampled specs run over
/// the seeded sample stream instead).
BoundSurvey bound_survey(const FieldCtx& k, const EnsembleSpec& spec, int n, int workers,
                         std::uint64_t budget);

/// Exact sup of lhs_absolute over all conceivable image sizes 1..q+1; when
/// the rhs exceeds this the inequality is vacuous and satisfied_abs must be
/// true for every map (sanity guard against orientation errors).
Rat lhs_absolute_sup(std::uint32_t q, const Rat& fix);

}  // namespace ffdyn
