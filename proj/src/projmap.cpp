#include "ffdyn/projmap.hpp"

#include <cassert>
#include <numeric>
#include <sstream>

namespace ffdyn {

std::optional<RatMap> normalize(const FieldCtx& k, poly::Poly f, poly::Poly g) {
    for (const poly::Poly* c : {&f, &g})
        for (Fe e : *c)
            if (!k.contains(e))
                throw ValidationError("coefficient " + std::to_string(e) +
                                      " is not an element of F_" + std::to_string(k.q()) +
                                      " (mixed field contexts?)");
    f = poly::trim(std::move(f));
    g = poly::trim(std::move(g));
    if (f.empty() && g.empty()) throw ValidationError("normalize: both polynomials are zero");
    if (g.empty()) return std::nullopt;

    poly::Poly common = poly::gcd_monic(k, f, g);
    if (poly::degree(common) > 0) {
        f = poly::divmod(k, std::move(f), common).first;
        g = poly::divmod(k, std::move(g), common).first;
    }
    const int d = std::max(poly::degree(f), poly::degree(g));
    // canonical scaling: monic denominator when it attains the degree,
    // otherwise monic numerator
    Fe lead = (poly::degree(g) == d) ? poly::leading(g) : poly::leading(f);
    if (lead != fe_one) {
        const Fe s = k.inv(lead);
        f = poly::scale(k, f, s);
        g = poly::scale(k, g, s);
    }
    return RatMap{d, std::move(f), std::move(g), &k};
}

ProjPoint eval(const RatMap& map, ProjPoint pt) {
    const FieldCtx& k = *map.ctx;
    if (pt.is_infinity()) {
        // homogenized leading coefficients [F(1,0) : G(1,0)] = [f_d : g_d]
        const Fe fd = poly::coeff(map.num, map.d);
        const Fe gd = poly::coeff(map.den, map.d);
        if (gd == fe_zero) return ProjPoint::infinity();
        return ProjPoint::finite(k.div(fd, gd));
    }
    const Fe fx = poly::eval(k, map.num, pt.value());
    const Fe gx = poly::eval(k, map.den, pt.value());
    if (gx == fe_zero) {
        assert(fx != fe_zero);  // impossible: gcd(f, g) = 1
        return ProjPoint::infinity();
    }
    return ProjPoint::finite(k.div(fx, gx));
}

bool derivative_is_zero(const RatMap& map) {
    const FieldCtx& k = *map.ctx;
    const poly::Poly w = poly::sub(k, poly::mul(k, poly::derivative(k, map.num), map.den),
                                   poly::mul(k, map.num, poly::derivative(k, map.den)));
    return poly::is_zero(w);
}

namespace {

// tuple entries are high-degree-first; polynomials are low-to-high
poly::Poly tuple_front_poly(const CoeffTuple& t, int d) {
    poly::Poly f(std::size_t(d) + 1);
    for (int i = 0; i <= d; ++i) f[std::size_t(d - i)] = t.entries[std::size_t(i)];
    return poly::trim(std::move(f));
}

poly::Poly tuple_back_poly(const CoeffTuple& t, int d) {
    if (t.kind == CoeffTuple::Kind::polynomial) return poly::Poly{fe_one};
    poly::Poly g(std::size_t(d) + 1);
    for (int i = 0; i <= d; ++i) g[std::size_t(d - i)] = t.entries[std::size_t(d + 1 + i)];
    return poly::trim(std::move(g));
}

}  // namespace

std::optional<RatMap> specialize(const FieldCtx& k, const CoeffTuple& tuple, int d) {
    if (tuple.degree() != d) throw ValidationError("specialize: tuple length does not match degree");
    poly::Poly f = tuple_front_poly(tuple, d);
    poly::Poly g = tuple_back_poly(tuple, d);
    if (f.empty() && g.empty()) return std::nullopt;
    auto map = normalize(k, std::move(f), std::move(g));
    if (!map || map->d != d) return std::nullopt;
    return map;
}

bool good_reduction_by_resultant(const FieldCtx& k, const CoeffTuple& tuple, int d) {
    poly::Poly f = tuple_front_poly(tuple, d);
    poly::Poly g = tuple_back_poly(tuple, d);
    if (std::max(poly::degree(f), poly::degree(g)) != d) return false;
    return poly::resultant(k, f, g) != fe_zero;
}

bool tuple_generates(const FieldCtx& k, const CoeffTuple& tuple) {
    std::uint32_t l = 1;
    for (Fe e : tuple.entries) l = std::lcm(l, k.subfield_degree(e));
    return l == k.j();
}

std::string RatMap::to_text() const {
    std::ostringstream os;
    os << d << ";";
    for (Fe c : num) os << " " << ctx->to_string(c);
    if (num.empty()) os << " " << ctx->to_string(fe_zero);
    os << ";";
    for (Fe c : den) os << " " << ctx->to_string(c);
    if (den.empty()) os << " " << ctx->to_string(fe_zero);
    return os.str();
}

RatMap RatMap::parse(const FieldCtx& k, const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw ValidationError("map text must have three ';'-separated fields");

    auto parse_poly = [&k](const std::string& s) {
        poly::Poly out;
        std::istringstream is(s);
        std::string tok;
        while (is >> tok) out.push_back(k.parse_element(tok));
        return poly::trim(std::move(out));
    };
    const int d = std::stoi(parts[0]);
    auto map = normalize(k, parse_poly(parts[1]), parse_poly(parts[2]));
    if (!map) throw ValidationError("map text denotes a degenerate map (zero denominator)");
    if (map->d != d) throw ValidationError("map text degree mismatch: declared " + parts[0] +
                                           ", normalized " + std::to_string(map->d));
    return *map;
}

}  // namespace ffdyn
