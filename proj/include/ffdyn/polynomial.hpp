#pragma once

#include <utility>
#include <vector>

#include "ffdyn/ffield.hpp"

namespace ffdyn::poly {

/// Coefficients low to high, trimmed (no trailing zeros); the zero polynomial
/// is the empty vector.
using Poly = std::vector<Fe>;

inline int degree(const Poly& f) { return int(f.size()) - 1; }
inline bool is_zero(const Poly& f) { return f.empty(); }
inline Fe leading(const Poly& f) { return f.empty() ? fe_zero : f.back(); }
inline Fe coeff(const Poly& f, int i) {
    return (i >= 0 && std::size_t(i) < f.size()) ? f[std::size_t(i)] : fe_zero;
}

Poly trim(Poly f);
Poly add(const FieldCtx& k, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& k, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& k, const Poly& a, const Poly& b);
Poly scale(const FieldCtx& k, const Poly& a, Fe c);
/// Quotient and remainder; g must be nonzero.
std::pair<Poly, Poly> divmod(const FieldCtx& k, Poly f, const Poly& g);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd_monic(const FieldCtx& k, Poly a, Poly b);
Fe eval(const FieldCtx& k, const Poly& f, Fe x);
Poly derivative(const FieldCtx& k, const Poly& f);

/// Resultant as the Sylvester-matrix determinant over the field. Degenerate
/// inputs follow the shared-root convention (nonzero iff no common root in
/// the algebraic closure): both zero -> 0; one zero -> 0 unless the other is
/// a nonzero constant, then 1.
Fe resultant(const FieldCtx& k, const Poly& f, const Poly& g);

}  // namespace ffdyn::poly
