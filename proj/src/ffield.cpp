#include "ffdyn/ffield.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffdyn {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint32_t> prime_factors_u32(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace slowfield {

namespace {

constexpr std::size_t kMaxDigits = FieldCtx::kMaxExtensionDegree + 1;

void unpack(std::uint32_t p, std::uint32_t j, Fe a, std::uint32_t* c) {
    for (std::uint32_t i = 0; i < j; ++i) {
        c[i] = a % p;
        a /= p;
    }
}

Fe pack(std::uint32_t p, std::uint32_t j, const std::uint32_t* c) {
    Fe v = 0;
    for (std::uint32_t i = j; i-- > 0;) v = v * p + c[i];
    return v;
}

}  // namespace

Fe add(std::uint32_t p, std::uint32_t j, Fe a, Fe b) {
    std::uint32_t ca[kMaxDigits], cb[kMaxDigits];
    unpack(p, j, a, ca);
    unpack(p, j, b, cb);
    for (std::uint32_t i = 0; i < j; ++i) ca[i] = (ca[i] + cb[i]) % p;
    return pack(p, j, ca);
}

Fe mul(std::uint32_t p, const std::vector<std::uint32_t>& modulus, Fe a, Fe b) {
    const std::uint32_t j = std::uint32_t(modulus.size()) - 1;
    std::uint32_t ca[kMaxDigits], cb[kMaxDigits];
    unpack(p, j, a, ca);
    unpack(p, j, b, cb);
    std::uint64_t prod[2 * kMaxDigits] = {0};
    for (std::uint32_t i = 0; i < j; ++i) {
        if (ca[i] == 0) continue;
        for (std::uint32_t k = 0; k < j; ++k) prod[i + k] += std::uint64_t(ca[i]) * cb[k];
    }
    // reduce by the monic modulus, top down
    for (std::uint32_t deg = 2 * j - 2; deg + 1 > j; --deg) {
        std::uint64_t c = prod[deg] % p;
        prod[deg] = 0;
        if (c == 0) continue;
        std::uint64_t mc = p - c;  // subtracting c*mod == adding (p-c)*mod mod p
        for (std::uint32_t i = 0; i < j; ++i) prod[deg - j + i] += mc * modulus[i];
    }
    std::uint32_t out[kMaxDigits];
    for (std::uint32_t i = 0; i < j; ++i) out[i] = std::uint32_t(prod[i] % p);
    return pack(p, j, out);
}

Fe pow(std::uint32_t p, const std::vector<std::uint32_t>& modulus, Fe a, std::uint64_t e) {
    Fe r = fe_one, base = a;
    while (e) {
        if (e & 1) r = mul(p, modulus, r, base);
        base = mul(p, modulus, base, base);
        e >>= 1;
    }
    return r;
}

namespace {

// Remainder of num (low-to-high, arbitrary length) mod a monic divisor.
std::vector<std::uint32_t> poly_rem(std::uint32_t p, std::vector<std::uint32_t> num,
                                    const std::vector<std::uint32_t>& den) {
    auto trim = [](std::vector<std::uint32_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(num);
    const std::size_t dn = den.size() - 1;
    while (num.size() > dn) {
        std::uint32_t c = num.back();
        std::size_t shift = num.size() - 1 - dn;
        for (std::size_t i = 0; i <= dn; ++i) {
            std::uint64_t cur = num[shift + i];
            num[shift + i] = std::uint32_t((cur + std::uint64_t(p - c % p) % p * den[i]) % p);
        }
        trim(num);
    }
    return num;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs) {
    const std::uint32_t deg = std::uint32_t(coeffs.size()) - 1;
    if (deg == 1) return true;
    for (std::uint32_t k = 1; k <= deg / 2; ++k) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < k; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> den(k + 1);
            std::uint64_t t = idx;
            for (std::uint32_t i = 0; i < k; ++i) {
                den[i] = std::uint32_t(t % p);
                t /= p;
            }
            den[k] = 1;
            if (poly_rem(p, coeffs, den).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t degree) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(degree + 1);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < degree; ++i) {
            c[i] = std::uint32_t(t % p);
            t /= p;
        }
        c[degree] = 1;
        if (is_irreducible(p, c)) return c;
    }
    throw std::logic_error("no irreducible polynomial found");  // cannot happen
}

}  // namespace slowfield

FieldCtx FieldCtx::make(std::uint32_t p, std::uint32_t j) {
    if (!is_prime_u32(p)) throw ValidationError("field characteristic must be prime, got " + std::to_string(p));
    if (j < 1 || j > kMaxExtensionDegree)
        throw ValidationError("extension degree must be in [1, 12], got " + std::to_string(j));
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < j; ++i) {
        q *= p;
        if (q > kMaxCardinality)
            throw ValidationError("field cardinality exceeds 2^20 cap");
    }
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.j_ = j;
    ctx.q_ = std::uint32_t(q);
    ctx.modulus_ = slowfield::least_irreducible(p, j);
    ctx.build_tables();
    return ctx;
}

void FieldCtx::build_tables() {
    const std::uint32_t q = q_;
    const std::uint32_t order = q - 1;
    const auto factors = prime_factors_u32(order);

    gen_ = 0;
    for (Fe cand = 1; cand < q; ++cand) {
        bool ok = true;
        for (std::uint32_t ell : factors) {
            if (slowfield::pow(p_, modulus_, cand, order / ell) == fe_one) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_ = cand;
            break;
        }
    }
    if (gen_ == 0 && q > 2) throw std::logic_error("generator search failed");
    if (q == 2) gen_ = 1;

    exp_.assign(order, 0);
    log_.assign(q, kNoLog);
    Fe cur = fe_one;
    for (std::uint32_t k = 0; k < order; ++k) {
        exp_[k] = cur;
        log_[cur] = k;
        cur = slowfield::mul(p_, modulus_, cur, gen_);
    }
    if (cur != fe_one) throw std::logic_error("generator order mismatch");

    zech_.assign(order, kNoLog);
    for (std::uint32_t k = 0; k < order; ++k) {
        Fe s = slowfield::add(p_, j_, fe_one, exp_[k]);
        zech_[k] = s == 0 ? kNoLog : log_[s];
    }
    half_ = p_ == 2 ? 0 : order / 2;
}

Fe FieldCtx::inv(Fe a) const {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(q_));
    std::uint32_t la = log_[a];
    return la == 0 ? fe_one : exp_[q_ - 1 - la];
}

std::uint32_t FieldCtx::subfield_degree(Fe a) const {
    for (std::uint32_t m = 1; m <= j_; ++m) {
        if (j_ % m != 0) continue;
        std::uint64_t pm = 1;
        for (std::uint32_t i = 0; i < m; ++i) pm *= p_;
        if (pow(a, pm) == a) return m;
    }
    throw std::logic_error("subfield degree: Frobenius orbit did not close");
}

std::uint64_t FieldCtx::count_proper_subfield_elements() const {
    if (j_ == 1) return 0;
    std::uint64_t count = 0;
    for (Fe a = 0; a < q_; ++a)
        if (subfield_degree(a) < j_) ++count;
    return count;
}

std::vector<std::uint32_t> FieldCtx::coords(Fe a) const {
    std::vector<std::uint32_t> c(j_);
    for (std::uint32_t i = 0; i < j_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Fe FieldCtx::from_coords(const std::vector<std::uint32_t>& c) const {
    if (c.size() != j_) throw ValidationError("coordinate vector has wrong length");
    Fe v = 0;
    for (std::uint32_t i = j_; i-- > 0;) {
        if (c[i] >= p_) throw ValidationError("coordinate out of range");
        v = v * p_ + c[i];
    }
    return v;
}

std::string FieldCtx::to_string(Fe a) const {
    if (j_ == 1) return std::to_string(a);
    auto c = coords(a);
    std::string out;
    for (std::uint32_t i = 0; i < j_; ++i) {
        if (i) out += '.';
        out += std::to_string(c[i]);
    }
    return out;
}

Fe FieldCtx::parse_element(const std::string& text) const {
    std::vector<std::uint32_t> c;
    std::string cur;
    for (char ch : text + ".") {
        if (ch == '.') {
            if (cur.empty()) throw ValidationError("malformed field element '" + text + "'");
            c.push_back(std::uint32_t(std::stoul(cur)));
            cur.clear();
        } else if (ch >= '0' && ch <= '9') {
            cur += ch;
        } else {
            throw ValidationError("malformed field element '" + text + "'");
        }
    }
    if (c.size() == 1 && j_ > 1) c.resize(j_, 0);  // base-field constant shorthand
    return from_coords(c);
}

}  // namespace ffdyn
