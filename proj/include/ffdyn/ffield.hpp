#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdyn/numeric.hpp"

namespace ffdyn {

/// Element of F_{p^j}, stored as its power-basis coordinates packed into one
/// machine word: value = sum c_i * p^i with 0 <= c_i < p. The packed value is
/// also the element's canonical index in [0, q).
using Fe = std::uint32_t;

inline constexpr Fe fe_zero = 0;
inline constexpr Fe fe_one = 1;

/// Immutable arithmetic context for F_{p^j}. Construction picks the
/// lexicographically least monic irreducible modulus (coefficient vectors
/// below the leading term compared as base-p integers, high power first), so
/// two contexts with equal (p, j) are interchangeable. Multiplicative
/// structure is table-backed (discrete log / Zech logarithm), additive
/// structure rides on the same tables; everything is O(1) per operation.
///
/// Thread safety: const after construction, freely shared across workers.
class FieldCtx {
  public:
    static constexpr std::uint32_t kMaxExtensionDegree = 12;
    static constexpr std::uint32_t kMaxCardinality = 1u << 20;

    /// Builds F_{p^j}. Throws ValidationError unless p is prime,
    /// 1 <= j <= 12 and p^j <= 2^20.
    static FieldCtx make(std::uint32_t p, std::uint32_t j);

    std::uint32_t p() const { return p_; }
    std::uint32_t j() const { return j_; }
    std::uint32_t q() const { return q_; }
    /// Modulus coefficients, low to high, length j+1, monic.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Fe generator() const { return gen_; }

    bool contains(Fe a) const { return a < q_; }
    bool same(const FieldCtx& other) const { return this == &other; }

    Fe add(Fe a, Fe b) const {
        if (a == 0) return b;
        if (b == 0) return a;
        std::uint32_t la = log_[a], lb = log_[b];
        std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
        std::uint32_t z = zech_[d];
        if (z == kNoLog) return 0;
        std::uint32_t e = la + z;
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    Fe neg(Fe a) const {
        if (a == 0 || p_ == 2) return a;
        std::uint32_t e = log_[a] + half_;
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    Fe mul(Fe a, Fe b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    /// Throws std::domain_error on zero.
    Fe inv(Fe a) const;

    /// a / b; throws std::domain_error when b == 0.
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    /// a^e with the convention 0^0 = 1.
    Fe pow(Fe a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? fe_one : fe_zero;
        std::uint64_t r = (std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
        return exp_[r];
    }

    Fe frobenius(Fe a) const { return pow(a, p_); }

    /// Least m dividing j with a^{p^m} == a, i.e. [F_p(a) : F_p].
    std::uint32_t subfield_degree(Fe a) const;

    /// Number of elements lying in a proper subfield (0 for j == 1; the prime
    /// field itself does not count as proper there). Full enumeration.
    std::uint64_t count_proper_subfield_elements() const;

    /// Power-basis coordinates, low to high, length j.
    std::vector<std::uint32_t> coords(Fe a) const;
    Fe from_coords(const std::vector<std::uint32_t>& c) const;
    /// Base-field residue r < p reinterpreted as a constant of this field.
    Fe from_base_residue(std::uint32_t r) const { return r % p_; }

    /// Coordinates joined by '.', low to high; plain integer when j == 1.
    std::string to_string(Fe a) const;
    Fe parse_element(const std::string& text) const;

  private:
    static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

    FieldCtx() = default;
    void build_tables();

    std::uint32_t p_ = 0, j_ = 0, q_ = 0;
    std::uint32_t gen_ = 0;
    std::uint32_t half_ = 0;  // log of -1 (0 in characteristic 2)
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_;   // size q-1
    std::vector<std::uint32_t> log_;   // size q, log_[0] = kNoLog
    std::vector<std::uint32_t> zech_;  // zech_[k] = log(1 + g^k), kNoLog when zero
};

bool is_prime_u32(std::uint32_t n);
std::vector<std::uint32_t> prime_factors_u32(std::uint32_t n);

/// Direct digit-vector arithmetic mod (p, modulus). This is the bootstrap
/// used to build FieldCtx tables and the serial reference the table path is
/// tested against; it never touches the tables.
namespace slowfield {

Fe add(std::uint32_t p, std::uint32_t j, Fe a, Fe b);
Fe mul(std::uint32_t p, const std::vector<std::uint32_t>& modulus, Fe a, Fe b);
Fe pow(std::uint32_t p, const std::vector<std::uint32_t>& modulus, Fe a, std::uint64_t e);

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs);
/// Lexicographically least monic irreducible of the given degree (see FieldCtx).
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t degree);

}  // namespace slowfield

}  // namespace ffdyn
