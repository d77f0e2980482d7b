#include "ffdyn/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ffdyn::poly {

Poly trim(Poly f) {
    while (!f.empty() && f.back() == fe_zero) f.pop_back();
    return f;
}

Poly add(const FieldCtx& k, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), fe_zero);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = k.add(i < a.size() ? a[i] : fe_zero, i < b.size() ? b[i] : fe_zero);
    return trim(std::move(out));
}

Poly sub(const FieldCtx& k, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), fe_zero);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = k.sub(i < a.size() ? a[i] : fe_zero, i < b.size() ? b[i] : fe_zero);
    return trim(std::move(out));
}

Poly mul(const FieldCtx& k, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, fe_zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == fe_zero) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
    return trim(std::move(out));
}

Poly scale(const FieldCtx& k, const Poly& a, Fe c) {
    if (c == fe_zero) return {};
    Poly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = k.mul(a[i], c);
    return out;
}

std::pair<Poly, Poly> divmod(const FieldCtx& k, Poly f, const Poly& g) {
    if (g.empty()) throw std::domain_error("polynomial division by zero");
    f = trim(std::move(f));
    if (f.size() < g.size()) return {Poly{}, std::move(f)};
    Poly quot(f.size() - g.size() + 1, fe_zero);
    const Fe glc_inv = k.inv(g.back());
    while (f.size() >= g.size() && !f.empty()) {
        const std::size_t sh = f.size() - g.size();
        const Fe c = k.mul(f.back(), glc_inv);
        quot[sh] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            f[sh + i] = k.sub(f[sh + i], k.mul(c, g[i]));
        f = trim(std::move(f));
    }
    return {trim(std::move(quot)), std::move(f)};
}

Poly gcd_monic(const FieldCtx& k, Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = divmod(k, std::move(a), b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != fe_one) a = scale(k, a, k.inv(a.back()));
    return a;
}

Fe eval(const FieldCtx& k, const Poly& f, Fe x) {
    Fe acc = fe_zero;
    for (std::size_t i = f.size(); i-- > 0;) acc = k.add(k.mul(acc, x), f[i]);
    return acc;
}

Poly derivative(const FieldCtx& k, const Poly& f) {
    if (f.size() <= 1) return {};
    Poly out(f.size() - 1, fe_zero);
    for (std::size_t i = 1; i < f.size(); ++i) {
        const Fe m = k.from_base_residue(std::uint32_t(i % k.p()));
        out[i - 1] = k.mul(m, f[i]);
    }
    return trim(std::move(out));
}

Fe resultant(const FieldCtx& k, const Poly& f, const Poly& g) {
    const int m = degree(f), n = degree(g);
    if (m < 0 && n < 0) return fe_zero;
    if (m < 0) return n == 0 ? fe_one : fe_zero;
    if (n < 0) return m == 0 ? fe_one : fe_zero;
    const int size = m + n;
    if (size == 0) return fe_one;  // two nonzero constants

    // Sylvester matrix: n rows of f coefficients, m rows of g, high to low.
    std::vector<Fe> a(std::size_t(size) * size, fe_zero);
    auto at = [&](int r, int c) -> Fe& { return a[std::size_t(r) * size + c]; };
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) at(r, r + i) = f[std::size_t(m - i)];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) at(n + r, r + i) = g[std::size_t(n - i)];

    // Gaussian elimination; determinant is the product of pivots times the
    // swap sign.
    Fe det = fe_one;
    bool negate = false;
    for (int col = 0; col < size; ++col) {
        int pivot = -1;
        for (int r = col; r < size; ++r)
            if (at(r, col) != fe_zero) {
                pivot = r;
                break;
            }
        if (pivot < 0) return fe_zero;
        if (pivot != col) {
            for (int c = col; c < size; ++c) std::swap(at(pivot, c), at(col, c));
            negate = !negate;
        }
        const Fe pv = at(col, col);
        det = k.mul(det, pv);
        const Fe pv_inv = k.inv(pv);
        for (int r = col + 1; r < size; ++r) {
            const Fe factor = k.mul(at(r, col), pv_inv);
            if (factor == fe_zero) continue;
            for (int c = col; c < size; ++c)
                at(r, c) = k.sub(at(r, c), k.mul(factor, at(col, c)));
        }
    }
    return negate ? k.neg(det) : det;
}

}  // namespace ffdyn::poly
