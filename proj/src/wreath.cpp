#include "ffdyn/wreath.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffdyn {

namespace {

std::uint64_t factorial_u64(int d) {
    std::uint64_t f = 1;
    for (int i = 2; i <= d; ++i) f *= std::uint64_t(i);
    return f;
}

}  // namespace

int Perm::fixed_points() const {
    int c = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i] == i) ++c;
    return c;
}

Perm Perm::identity(int d) {
    Perm p;
    p.images.resize(std::size_t(d));
    std::iota(p.images.begin(), p.images.end(), std::uint8_t(0));
    return p;
}

Perm Perm::from_index(int d, std::uint64_t idx) {
    // Lehmer decode in lexicographic order
    std::vector<std::uint8_t> pool(std::size_t(d), 0);
    std::iota(pool.begin(), pool.end(), std::uint8_t(0));
    std::vector<std::uint64_t> radix(std::size_t(d), std::uint64_t{1});
    for (int i = d - 2; i >= 0; --i) radix[std::size_t(i)] = radix[std::size_t(i) + 1] * std::uint64_t(d - 1 - i);
    Perm p;
    p.images.reserve(std::size_t(d));
    for (int i = 0; i < d; ++i) {
        const std::uint64_t digit = idx / radix[std::size_t(i)];
        idx %= radix[std::size_t(i)];
        p.images.push_back(pool[std::size_t(digit)]);
        pool.erase(pool.begin() + std::ptrdiff_t(digit));
    }
    return p;
}

Perm Perm::after(const Perm& other) const {
    Perm out;
    out.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) out.images[i] = images[other.images[i]];
    return out;
}

WreathElem WreathElem::identity(int d, int n) {
    WreathElem w;
    w.d = d;
    w.level = n;
    w.top = Perm::identity(d);
    if (n > 1) w.branches.assign(std::size_t(d), identity(d, n - 1));
    return w;
}

namespace {

// orders[k] = |[S_d]^k| for k = 1..n; caller guarantees they fit u64
std::vector<std::uint64_t> small_orders(int d, int n) {
    std::vector<std::uint64_t> v(std::size_t(n) + 1, 0);
    v[1] = factorial_u64(d);
    for (int k = 2; k <= n; ++k) {
        std::uint64_t x = 1;
        for (int i = 0; i < d; ++i) x *= v[std::size_t(k) - 1];
        v[std::size_t(k)] = x * v[1];
    }
    return v;
}

WreathElem decode_elem(int d, int n, std::uint64_t idx, const std::vector<std::uint64_t>& orders) {
    WreathElem w;
    w.d = d;
    w.level = n;
    if (n == 1) {
        w.top = Perm::from_index(d, idx);
        return w;
    }
    const std::uint64_t sub = orders[std::size_t(n) - 1];
    w.branches.reserve(std::size_t(d));
    for (int i = 0; i < d; ++i) {
        w.branches.push_back(decode_elem(d, n - 1, idx % sub, orders));
        idx /= sub;
    }
    w.top = Perm::from_index(d, idx);
    return w;
}

}  // namespace

WreathElem WreathElem::from_index(int d, int n, std::uint64_t idx) {
    if (!fits_u64(group_order(d, n))) throw BudgetError("wreath element index space exceeds 64 bits");
    return decode_elem(d, n, idx, small_orders(d, n));
}

namespace {

void act_into(const WreathElem& w, const std::uint8_t* pt, std::uint8_t* out) {
    if (w.level == 1) {
        out[0] = w.top.apply(pt[0]);
        return;
    }
    const std::uint8_t t = pt[std::size_t(w.level) - 1];
    act_into(w.branches[t], pt, out);  // prefix moved by the branch chosen by the original t
    out[std::size_t(w.level) - 1] = w.top.apply(t);
}

bool has_fixed_point(const WreathElem& w, int d, int n, std::vector<std::uint8_t>& pt,
                     std::vector<std::uint8_t>& out) {
    // scan all d^n points with act
    std::fill(pt.begin(), pt.end(), std::uint8_t(0));
    for (;;) {
        act_into(w, pt.data(), out.data());
        if (std::equal(pt.begin(), pt.end(), out.begin())) return true;
        int i = 0;
        while (i < n && ++pt[std::size_t(i)] == d) pt[std::size_t(i++)] = 0;
        if (i == n) return false;
    }
}

}  // namespace

std::vector<std::uint8_t> act(const WreathElem& w, const std::vector<std::uint8_t>& pt) {
    if (int(pt.size()) != w.level) throw ValidationError("act: point length must equal the level");
    for (auto c : pt)
        if (c >= w.d) throw ValidationError("act: point coordinate out of range");
    std::vector<std::uint8_t> out(pt.size());
    act_into(w, pt.data(), out.data());
    return out;
}

WreathElem compose(const WreathElem& w, const WreathElem& v) {
    if (w.level != v.level || w.d != v.d) throw ValidationError("compose: mismatched elements");
    WreathElem out;
    out.d = w.d;
    out.level = w.level;
    out.top = w.top.after(v.top);
    if (w.level > 1) {
        out.branches.reserve(std::size_t(w.d));
        for (int i = 0; i < w.d; ++i)
            out.branches.push_back(compose(w.branches[std::size_t(v.top.apply(std::uint8_t(i)))],
                                           v.branches[std::size_t(i)]));
    }
    return out;
}

Int group_order(int d, long n) {
    if (d < 2 || n < 1) throw ValidationError("group_order: need d >= 2, n >= 1");
    // exponent (d^n - 1)/(d - 1)
    Int e = (ui_pow(std::uint32_t(d), std::uint32_t(n)) - 1) / (d - 1);
    const double dfact_bits = std::lgamma(double(d) + 1.0) / std::log(2.0);
    if (e.get_d() * dfact_bits > double(1u << 22))
        throw BudgetError("group order exceeds the 2^22-bit budget");
    Int base = 1;
    for (int i = 2; i <= d; ++i) base *= i;
    return int_pow(base, e.get_ui());
}

std::optional<Int> group_order_if_small(int d, long n) {
    try {
        return group_order(d, n);
    } catch (const BudgetError&) {
        return std::nullopt;
    }
}

FixReport fix_bruteforce(int d, int n) {
    if (d < 2 || n < 1) throw ValidationError("fix_bruteforce: need d >= 2, n >= 1");
    Int order = group_order(d, n);
    if (order > 10000000) throw BudgetError("fix_bruteforce: group order exceeds 10^7");
    const std::uint64_t total = to_u64(order);
    const auto orders = small_orders(d, n);

    std::uint64_t count = 0;
#pragma omp parallel reduction(+ : count)
    {
        std::vector<std::uint8_t> pt(std::size_t(n), 0), out(std::size_t(n), 0);
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < std::int64_t(total); ++idx) {
            const WreathElem w = decode_elem(d, n, std::uint64_t(idx), orders);
            if (has_fixed_point(w, d, n, pt, out)) ++count;
        }
    }

    FixReport rep;
    rep.d = d;
    rep.n = n;
    rep.fix_lo = rep.fix_hi = make_rat(Int(count), order);
    rep.bound = make_rat(2, n + 2);
    rep.group_order = order;
    rep.method = FixMethod::bruteforce;
    return rep;
}

std::vector<std::pair<Int, int>> cycle_classes(int d) {
    // enumerate partitions of d; class size = d! / prod(part^mult * mult!)
    std::vector<std::pair<Int, int>> out;
    std::vector<int> parts;
    Int dfact = 1;
    for (int i = 2; i <= d; ++i) dfact *= i;

    auto emit = [&]() {
        Int denom = 1;
        int i = 0;
        while (i < int(parts.size())) {
            int jx = i;
            while (jx < int(parts.size()) && parts[std::size_t(jx)] == parts[std::size_t(i)]) ++jx;
            const int mult = jx - i;
            denom *= int_pow(Int(parts[std::size_t(i)]), std::uint32_t(mult));
            for (int m = 2; m <= mult; ++m) denom *= m;
            i = jx;
        }
        const int fixed = int(std::count(parts.begin(), parts.end(), 1));
        out.emplace_back(dfact / denom, fixed);
    };

    // descending partitions, recursively
    auto rec = [&](auto&& self, int remaining, int maxp) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        for (int part = std::min(remaining, maxp); part >= 1; --part) {
            parts.push_back(part);
            self(self, remaining - part, part);
            parts.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

namespace {

// One recursion step: T(x) = (1/d!) * sum_classes size * (1 - (1-x)^fixpts).
// T is monotone nondecreasing on [0,1], so lower/upper bounds propagate.
Rat fix_step(const std::vector<std::pair<Int, int>>& classes, const Int& dfact, const Rat& x) {
    const Rat u = Rat(1) - x;
    int max_fp = 0;
    for (const auto& [size, fp] : classes) max_fp = std::max(max_fp, fp);
    std::vector<Rat> upow(std::size_t(max_fp) + 1);
    upow[0] = Rat(1);
    for (int i = 1; i <= max_fp; ++i) upow[std::size_t(i)] = upow[std::size_t(i) - 1] * u;
    Rat sum = 0;
    for (const auto& [size, fp] : classes)
        if (fp > 0) sum += Rat(size) * (Rat(1) - upow[std::size_t(fp)]);
    return sum / Rat(dfact);
}

}  // namespace

FixReport fix_recursive(int d, long n, const FixPrecision& prec) {
    if (d < 2 || d > 12) throw ValidationError("fix_recursive: need 2 <= d <= 12");
    if (n < 1 || n > 10000) throw ValidationError("fix_recursive: need 1 <= n <= 10^4");

    const auto classes = cycle_classes(d);
    Int dfact = 1;
    for (int i = 2; i <= d; ++i) dfact *= i;

    Int fixers = 0;
    for (const auto& [size, fp] : classes)
        if (fp > 0) fixers += size;
    Rat lo = make_rat(fixers, dfact);
    Rat hi = lo;

    for (long step = 2; step <= n; ++step) {
        lo = fix_step(classes, dfact, lo);
        hi = fix_step(classes, dfact, hi);
        if (rat_bits(lo) > prec.exact_max_bits) lo = round_down_dyadic(lo, prec.dyadic_frac_bits);
        if (rat_bits(hi) > prec.exact_max_bits) hi = round_up_dyadic(hi, prec.dyadic_frac_bits);
    }

    FixReport rep;
    rep.d = d;
    rep.n = n;
    rep.fix_lo = std::move(lo);
    rep.fix_hi = std::move(hi);
    rep.bound = make_rat(2, n + 2);
    rep.group_order = group_order_if_small(d, n);
    rep.method = FixMethod::recursion;
    return rep;
}

FixBoundCheck check_fix_bound(int d, long n) {
    FixPrecision prec;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const FixReport rep = fix_recursive(d, n, prec);
        FixBoundCheck out;
        out.gap_lo = rep.bound - rep.fix_hi;
        out.gap_hi = rep.bound - rep.fix_lo;
        if (rep.fix_hi < rep.bound) {
            out.holds = true;
            return out;
        }
        if (rep.fix_lo >= rep.bound) {
            out.holds = false;
            return out;
        }
        prec.dyadic_frac_bits *= 4;  // enclosure straddles the bound: sharpen
        prec.exact_max_bits *= 4;
    }
    throw std::logic_error("check_fix_bound: could not certify at maximum precision");
}

}  // namespace ffdyn
