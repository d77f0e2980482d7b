#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffdyn/polynomial.hpp"

namespace ffdyn {

/// Point of P^1(F_q) in canonical form: finite x stored as [x : 1], infinity
/// as [1 : 0]. Equality is structural. The canonical index enumerates finite
/// points in field-element order first, then infinity at index q.
class ProjPoint {
  public:
    static ProjPoint finite(Fe x) { return ProjPoint(x); }
    static ProjPoint infinity() { return ProjPoint(kInf); }
    static ProjPoint from_index(std::uint32_t idx, const FieldCtx& k) {
        return idx == k.q() ? infinity() : finite(idx);
    }

    bool is_infinity() const { return v_ == kInf; }
    Fe value() const { return v_; }  // meaningful only when finite
    std::uint32_t index(const FieldCtx& k) const { return is_infinity() ? k.q() : v_; }

    bool operator==(const ProjPoint&) const = default;

  private:
    static constexpr std::uint32_t kInf = 0xFFFFFFFFu;
    explicit ProjPoint(std::uint32_t v) : v_(v) {}
    std::uint32_t v_;
};

/// Rational map of exact degree d in canonical form:
///   - gcd(num, den) = 1,
///   - max(deg num, deg den) = d,
///   - den monic when deg den == d, otherwise num monic.
/// Each rational function therefore has exactly one representative.
/// Polynomial maps are the special case deg den == 0.
struct RatMap {
    int d = 0;
    poly::Poly num, den;
    const FieldCtx* ctx = nullptr;

    bool is_polynomial() const { return poly::degree(den) == 0; }

    /// Text form "d; f coeffs low-to-high; g coeffs low-to-high" with
    /// elements printed as coordinate vectors (see FieldCtx::to_string).
    std::string to_text() const;
    static RatMap parse(const FieldCtx& k, const std::string& text);
};

/// Clears common factors, applies the canonical scaling and records the
/// degree. Returns nullopt when g == 0 (degenerate: not a self-map of P^1 of
/// any degree; evaluation oracles may treat it as the constant infinity).
/// Throws ValidationError when both inputs are zero.
std::optional<RatMap> normalize(const FieldCtx& k, poly::Poly f, poly::Poly g);

ProjPoint eval(const RatMap& map, ProjPoint pt);

/// True exactly when (f'g - fg') vanishes identically, i.e. the map is
/// inseparable.
bool derivative_is_zero(const RatMap& map);

/// Coefficient tuple (a_d,...,a_0) or (a_d,...,a_0,b_d,...,b_0), high degree
/// first, matching the generic-map parameterization.
struct CoeffTuple {
    enum class Kind { polynomial, rational };
    Kind kind;
    std::vector<Fe> entries;

    int degree() const {
        return kind == Kind::polynomial ? int(entries.size()) - 1 : int(entries.size()) / 2 - 1;
    }
};

/// Coefficient substitution at the tuple. Returns the specialized map when
/// the normalized degree equals d (good reduction), nullopt otherwise.
/// Bad reduction is a value, never an error.
std::optional<RatMap> specialize(const FieldCtx& k, const CoeffTuple& tuple, int d);

/// Independent good-reduction test: resultant of the raw tuple polynomials is
/// nonzero AND the raw top degree equals d. Must agree with specialize();
/// requires d >= 1.
bool good_reduction_by_resultant(const FieldCtx& k, const CoeffTuple& tuple, int d);

/// True iff the subfield generated by all entries is the whole field, i.e.
/// lcm of per-entry subfield degrees equals j.
bool tuple_generates(const FieldCtx& k, const CoeffTuple& tuple);

}  // namespace ffdyn
