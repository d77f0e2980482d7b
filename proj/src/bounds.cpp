#include "ffdyn/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffdyn {

namespace {

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// exact f_n needed: force the recursion to stay exact; n is capped so the
// rationals stay manageable
Rat exact_fix(int d, int n) {
    if (n > 24) throw BudgetError("bound_check: iterate depth capped at 24 (exact fix required)");
    FixPrecision prec;
    prec.exact_max_bits = std::size_t(1) << 36;  // effectively unbounded at n <= 24
    const FixReport rep = fix_recursive(d, n, prec);
    if (!rep.exact()) throw std::logic_error("bound_check: fix recursion lost exactness");
    return rep.fix();
}

}  // namespace

Rat lhs_absolute_sup(std::uint32_t q, const Rat& fix) {
    // max over s in [1, q+1] of | s/fix - (q+1) |
    const Rat hi = Rat(q + 1) / fix - Rat(q + 1);
    const Rat lo = Rat(q + 1) - Rat(1) / fix;
    return std::max(abs_rat(hi), abs_rat(lo));
}

namespace {

BoundCheck bound_check_with(const RatMap& map, int n, const Rat& fix, const Int& order) {
    const FieldCtx& k = *map.ctx;
    if (n < 1) throw ValidationError("bound_check: iterate must be >= 1");
    if (k.p() <= std::uint32_t(map.d))
        throw ValidationError("bound_check: gcd(q, d!) != 1, tameness assumption unavailable");
    if (derivative_is_zero(map)) throw ValidationError("bound_check: map is inseparable");

    BoundCheck out;
    out.q = k.q();
    out.d = map.d;
    out.n = n;

    const auto sizes = image_sequence(map, std::uint32_t(n));
    out.image_size = std::uint32_t(n) < sizes.size() ? sizes[std::size_t(n)] : sizes.back();
    out.image_ratio = make_rat(Int(out.image_size), Int(out.q + 1));
    out.assumed_fix = fix;
    out.assumed_group_order = order;
    out.rhs_abs_numerator = 7 * Int(n) * Int(map.d) * order;

    out.lhs_absolute = abs_rat(Rat(out.image_size) / fix - Rat(out.q + 1));
    out.lhs_relative = abs_rat(out.image_ratio - fix);

    const Int qz(out.q);
    out.satisfied_abs = lt_scaled_inv_sqrt_pow(out.lhs_absolute, Rat(out.rhs_abs_numerator), qz, 1);
    out.satisfied_rel =
        lt_scaled_inv_sqrt_pow(out.lhs_relative, Rat(out.rhs_abs_numerator) * fix, qz, 3);
    return out;
}

}  // namespace

BoundCheck bound_check(const RatMap& map, int n) {
    return bound_check_with(map, n, exact_fix(map.d, n), group_order(map.d, n));
}

BoundSurvey bound_survey(const FieldCtx& k, const EnsembleSpec& spec, int n, int workers,
                         std::uint64_t budget) {
    (void)workers;  // per-map exact rational work dominates; the loop stays serial
    BoundSurvey s;
    bool first = true;
    const Rat fix = exact_fix(spec.d, n);
    const Int order = group_order(spec.d, n);

    auto add = [&](const RatMap& m) {
        const BoundCheck c = bound_check_with(m, n, fix, order);
        ++s.map_count;
        s.satisfied_abs_count += c.satisfied_abs ? 1 : 0;
        s.satisfied_rel_count += c.satisfied_rel ? 1 : 0;
        if (first || c.lhs_relative < s.lhs_rel_min) s.lhs_rel_min = c.lhs_relative;
        if (first || c.lhs_relative > s.lhs_rel_max) s.lhs_rel_max = c.lhs_relative;
        first = false;
        // bin lhs_relative over [0,1); values >= 1 cannot occur (both terms lie in [0,1])
        const Rat scaled = c.lhs_relative * 10;
        auto bin = std::min<unsigned long>(9, Int(scaled.get_num() / scaled.get_den()).get_ui());
        ++s.lhs_hist[bin];
    };

    if (!spec.sampled) {
        const Int expected = count_maps(Int(k.q()), spec.d, spec.kind);
        if (expected > Int(budget)) throw BudgetError("bound survey ensemble exceeds budget");
        for_each_map(k, spec.d, spec.kind, add);
    } else {
        if (spec.sampled->n_samples > budget) throw BudgetError("bound survey samples exceed budget");
        for (std::uint64_t i = 0; i < spec.sampled->n_samples; ++i) add(sample_map(k, spec, i));
    }
    if (s.map_count == 0) throw ValidationError("bound survey: empty ensemble");
    return s;
}

}  // namespace ffdyn
