#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffdyn/numeric.hpp"

namespace ffdyn {

/// Permutation of {0, ..., d-1}.
struct Perm {
    std::vector<std::uint8_t> images;

    std::uint8_t apply(std::uint8_t i) const { return images[i]; }
    int degree() const { return int(images.size()); }
    int fixed_points() const;

    static Perm identity(int d);
    /// idx-th permutation of degree d in lexicographic order, 0 <= idx < d!.
    static Perm from_index(int d, std::uint64_t idx);
    /// this after other: (a*b)(x) = a(b(x)).
    Perm after(const Perm& other) const;

    bool operator==(const Perm&) const = default;
};

/// Element of the n-fold iterated wreath product [S_d]^n acting on points of
/// {0,...,d-1}^n. Level 1 is a plain permutation; at level n > 1 the element
/// is (branches[0..d-1], top) with branches in [S_d]^{n-1}. A point is
/// (s, t) with t its last coordinate; the element sends it to
/// (branches[t](s), top(t)) -- the branch is selected by the original t.
struct WreathElem {
    int d = 0;
    int level = 0;
    Perm top;
    std::vector<WreathElem> branches;  // empty at level 1

    static WreathElem identity(int d, int n);
    /// Mixed-radix decode: branch i is digit i base |[S_d]^{n-1}| (low first),
    /// the top permutation index is the remaining high digit.
    static WreathElem from_index(int d, int n, std::uint64_t idx);

    bool operator==(const WreathElem&) const = default;
};

/// Applies the recursive wreath action. pt has length n, entries in [0, d).
std::vector<std::uint8_t> act(const WreathElem& w, const std::vector<std::uint8_t>& pt);

/// Group law consistent with act as a left action:
/// act(compose(w, v), p) == act(w, act(v, p)).
WreathElem compose(const WreathElem& w, const WreathElem& v);

/// |[S_d]^n| = (d!)^{(d^n - 1)/(d - 1)}. Throws BudgetError when the result
/// would exceed ~2^22 bits.
Int group_order(int d, long n);
/// Same, or nullopt instead of throwing.
std::optional<Int> group_order_if_small(int d, long n);

enum class FixMethod { bruteforce, recursion };

/// fix_n = |Fix([sigma]^n)| / |[S_d]^n| with Fix the elements moving at least
/// one point to itself. Exact rationals are kept while they fit the precision
/// budget; beyond that [fix_lo, fix_hi] is a certified enclosure obtained by
/// outward dyadic rounding through the (monotone) recursion step.
struct FixReport {
    int d = 0;
    long n = 0;
    Rat fix_lo, fix_hi;          // equal iff exact
    Rat bound;                   // 2/(n+2)
    std::optional<Int> group_order;
    FixMethod method = FixMethod::recursion;

    bool exact() const { return fix_lo == fix_hi; }
    const Rat& fix() const { return fix_hi; }  // exact value or certified upper bound
};

struct FixPrecision {
    std::size_t exact_max_bits = 4096;  // keep exact rationals up to this size
    unsigned dyadic_frac_bits = 512;    // then round outward to this grid
};

/// Literal oracle: enumerates every group element and tests all d^n points
/// via act. Budget: group order <= 10^7.
FixReport fix_bruteforce(int d, int n);

/// Cycle-type recursion over S_d conjugacy classes:
///   f_1 = P(random permutation has a fixed point),
///   f_n = (1/d!) * sum_h (1 - (1 - f_{n-1})^{fixpts(h)}).
/// Validated against fix_bruteforce wherever the latter is in budget.
/// Budget: 2 <= d <= 12, 1 <= n <= 10^4.
FixReport fix_recursive(int d, long n, const FixPrecision& prec = {});

/// (class size, number of fixed points) per conjugacy class of S_d.
std::vector<std::pair<Int, int>> cycle_classes(int d);

struct FixBoundCheck {
    bool holds = false;   // certified f_n < 2/(n+2)
    Rat gap_lo, gap_hi;   // enclosure of bound - f_n (equal iff exact)
};

FixBoundCheck check_fix_bound(int d, long n);

}  // namespace ffdyn
