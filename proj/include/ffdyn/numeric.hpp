#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ffdyn {

inline constexpr const char* kVersion = "0.1.0";

using Int = mpz_class;
using Rat = mpq_class;

/// Bad user input / parameter combination (CLI exit code 2).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Work request exceeds the configured desk-scale budget (CLI exit code 3).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(Int num, Int den) {
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ui_pow(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline std::size_t bit_size(const Int& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

inline std::size_t rat_bits(const Rat& r) {
    return bit_size(Int(r.get_num())) + bit_size(Int(r.get_den()));
}

/// Largest rational <= r with denominator 2^frac_bits.
inline Rat round_down_dyadic(const Rat& r, unsigned frac_bits) {
    Int scaled = (Int(r.get_num()) << frac_bits) / Int(r.get_den());  // floor for nonneg
    return make_rat(scaled, Int(1) << frac_bits);
}

/// Smallest rational >= r with denominator 2^frac_bits.
inline Rat round_up_dyadic(const Rat& r, unsigned frac_bits) {
    Int num = Int(r.get_num()) << frac_bits;
    Int den(r.get_den());
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) q += 1;
    return make_rat(q, Int(1) << frac_bits);
}

/// Decides a < b * q^{-k/2} for a, b >= 0 without floating point (square both sides).
inline bool lt_scaled_inv_sqrt_pow(const Rat& a, const Rat& b, const Int& q, unsigned k) {
    // a < b / q^{k/2}  <=>  a^2 * q^k < b^2
    Rat lhs = a * a * Rat(int_pow(q, k));
    return lhs < b * b;
}

inline bool fits_u64(const Int& v) { return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Int& v) {
    // mpz_get_ui truncates to unsigned long (64-bit here)
    return mpz_get_ui(v.get_mpz_t());
}

}  // namespace ffdyn
