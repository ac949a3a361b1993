// Test-only oracles, independent of the library paths they check.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "birclass/funcfield.hpp"

namespace oracles {

using namespace birclass;

// ---------------------------------------------------------------------------
// group-law oracle: the third collinear point is found by extracting the
// roots of the cubic x^3 + a x + b - (lam x + mu)^2 by exhaustive scan, not by
// the closed-form x3 = lam^2 - x1 - x2.
// ---------------------------------------------------------------------------

inline CurvePoint oracle_add(const EllipticCurve& e, const CurvePoint& P, const CurvePoint& Q) {
    const std::int64_t p = e.p();
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    if (P.x() == Q.x() && modarith::add(P.y(), Q.y(), p) == 0) return CurvePoint::infinity();

    std::int64_t lam;
    if (P == Q)
        lam = modarith::mul(modarith::add(modarith::mul(3, modarith::mul(P.x(), P.x(), p), p), e.a(), p),
                            modarith::inv(modarith::mul(2, P.y(), p), p), p);
    else
        lam = modarith::mul(modarith::sub(Q.y(), P.y(), p),
                            modarith::inv(modarith::sub(Q.x(), P.x(), p), p), p);
    const std::int64_t mu = modarith::sub(P.y(), modarith::mul(lam, P.x(), p), p);

    // roots of x^3 + a x + b - (lam x + mu)^2 with multiplicity, by scan
    Poly cubic = e.rhs_poly() -
                 Poly::from_coeffs(p, {mu, lam}) * Poly::from_coeffs(p, {mu, lam});
    std::vector<std::int64_t> roots;
    for (std::int64_t x = 0; x < p && static_cast<int>(roots.size()) < 3; ++x) {
        const int m = cubic.is_zero() ? 0 : root_multiplicity(cubic, x);
        for (int i = 0; i < m; ++i) roots.push_back(x);
    }
    // remove x_P and x_Q once each; the leftover root is the third point
    auto remove_one = [&](std::int64_t v) {
        for (size_t i = 0; i < roots.size(); ++i)
            if (roots[i] == v) {
                roots.erase(roots.begin() + static_cast<long>(i));
                return;
            }
    };
    remove_one(P.x());
    remove_one(Q.x());
    if (roots.empty()) return CurvePoint::infinity(); // third intersection at infinity
    const std::int64_t x3 = roots.front();
    const std::int64_t y3 = modarith::add(modarith::mul(lam, x3, p), mu, p);
    return CurvePoint::affine(x3, modarith::sub(0, y3, p), p);
}

inline std::int64_t oracle_order(const EllipticCurve& e, const CurvePoint& P) {
    std::int64_t n = 1;
    CurvePoint acc = P;
    while (!acc.is_infinity()) {
        acc = oracle_add(e, acc, P);
        ++n;
    }
    return n;
}

inline CurvePoint oracle_scalar(const EllipticCurve& e, std::int64_t n, const CurvePoint& P) {
    CurvePoint acc = CurvePoint::infinity();
    CurvePoint step = n >= 0 ? P : CurvePoint::affine(P.x(), modarith::sub(0, P.y(), e.p()), e.p());
    for (std::int64_t i = 0; i < (n >= 0 ? n : -n); ++i) acc = oracle_add(e, acc, step);
    return acc;
}

// ---------------------------------------------------------------------------
// Laurent-series oracle at infinity: solve x(t) with t = x/y from the curve
// relation x^2 = t^2 (x^3 + a x + b), order by order.
// ---------------------------------------------------------------------------

struct LaurentSeries {
    std::int64_t p;
    std::map<int, std::int64_t> c; // exponent -> coefficient
    int truncation;                // coefficients valid for exponents < truncation

    std::int64_t coeff(int k) const {
        auto it = c.find(k);
        return it == c.end() ? 0 : it->second;
    }
    int lowest() const {
        for (const auto& [k, v] : c)
            if (v != 0) return k;
        return truncation;
    }
};

inline LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r{a.p, {}, std::min(a.truncation + b.lowest(), b.truncation + a.lowest())};
    for (const auto& [i, ci] : a.c)
        for (const auto& [j, cj] : b.c) {
            if (i + j >= r.truncation) continue;
            r.c[i + j] = modarith::add(r.coeff(i + j), modarith::mul(ci, cj, a.p), a.p);
        }
    return r;
}

inline LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r{a.p, a.c, std::min(a.truncation, b.truncation)};
    for (const auto& [k, v] : b.c) r.c[k] = modarith::add(r.coeff(k), v, a.p);
    return r;
}

inline LaurentSeries series_scale(const LaurentSeries& a, std::int64_t k) {
    LaurentSeries r = a;
    for (auto& [e, v] : r.c) v = modarith::mul(v, modarith::normalize(k, a.p), a.p);
    return r;
}

inline LaurentSeries series_monomial(std::int64_t p, int exp, std::int64_t coef, int trunc) {
    LaurentSeries r{p, {}, trunc};
    r.c[exp] = modarith::normalize(coef, p);
    return r;
}

/// Expansion of the coordinate x in powers of the uniformizer t = x/y.
inline LaurentSeries expand_x_at_infinity(const EllipticCurve& e, int terms) {
    const std::int64_t p = e.p();
    const int trunc = terms;
    LaurentSeries x = series_monomial(p, -2, 1, trunc);
    const std::int64_t half = modarith::inv(2, p);
    // residual F(x) = x^2 - t^2 (x^3 + a x + b); correction dF/dx ~ 2 t^-2
    for (int iter = 0; iter < 4 * terms + 16; ++iter) {
        LaurentSeries x2 = series_mul(x, x);
        LaurentSeries x3 = series_mul(x2, x);
        LaurentSeries rhs = series_add(series_add(x3, series_scale(x, e.a())),
                                       series_monomial(p, 0, e.b(), trunc));
        LaurentSeries t2rhs = series_mul(series_monomial(p, 2, 1, trunc + 8), rhs);
        LaurentSeries residual = series_add(x2, series_scale(t2rhs, p - 1));
        const int m = residual.lowest();
        if (m >= residual.truncation) break;
        const std::int64_t r = residual.coeff(m);
        // delta * 2 t^(k-2) cancels r t^m  =>  k = m + 2
        x.c[m + 2] = modarith::sub(x.coeff(m + 2), modarith::mul(r, half, p), p);
    }
    return x;
}

/// Oracle valuation at infinity of (a(x) + b(x) y) / c(x) via series lowest
/// exponents; y = x / t.
inline std::int64_t oracle_valuation_at_infinity(const FunctionElement& f, int terms = 24) {
    const EllipticCurve& e = f.curve();
    const std::int64_t p = e.p();
    const LaurentSeries x = expand_x_at_infinity(e, terms);
    const LaurentSeries y = series_mul(x, series_monomial(p, -1, 1, terms));
    auto eval_poly = [&](const Poly& q) {
        LaurentSeries acc = series_monomial(p, 0, 0, terms);
        LaurentSeries pw = series_monomial(p, 0, 1, terms);
        for (int i = 0; i <= q.degree(); ++i) {
            acc = series_add(acc, series_scale(pw, q.coeff(i)));
            pw = series_mul(pw, x);
        }
        return acc;
    };
    LaurentSeries num = eval_poly(f.num_a());
    if (!f.num_b().is_zero()) num = series_add(num, series_mul(eval_poly(f.num_b()), y));
    return num.lowest() - eval_poly(f.den()).lowest();
}

// ---------------------------------------------------------------------------
// random generators with rational support by construction
// ---------------------------------------------------------------------------

inline CurvePoint random_affine(std::mt19937_64& rng, const std::vector<CurvePoint>& pts) {
    std::vector<CurvePoint> affine;
    for (const auto& q : pts)
        if (!q.is_infinity()) affine.push_back(q);
    return affine[std::uniform_int_distribution<size_t>(0, affine.size() - 1)(rng)];
}

/// Product of vertical lines and chords with random small exponents: every
/// zero and pole is rational by construction.
inline FunctionElement random_rational_function(std::mt19937_64& rng, const EllipticCurve& e,
                                                int factors = 3) {
    const auto pts = enumerate_points(e);
    FunctionElement f = FunctionElement::constant(
        e, std::uniform_int_distribution<std::int64_t>(1, e.p() - 1)(rng));
    for (int i = 0; i < factors; ++i) {
        const CurvePoint P = random_affine(rng, pts);
        FunctionElement g = vertical_line(e, P);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) {
            const CurvePoint Q = random_affine(rng, pts);
            if (!(P.x() == Q.x() && (P.y() != Q.y() || P.y() == 0)))
                g = line_through(e, P, Q);
        }
        const int exp = std::uniform_int_distribution<int>(-2, 2)(rng);
        if (exp != 0) f = f * g.pow(exp);
    }
    return f;
}

/// Nonsquare function with nonempty odd-valuation set: a vertical line over a
/// non-2-torsion point times a random square.
inline FunctionElement random_nonsquare(std::mt19937_64& rng, const EllipticCurve& e) {
    const auto pts = enumerate_points(e);
    CurvePoint P = random_affine(rng, pts);
    while (P.y() == 0) P = random_affine(rng, pts);
    FunctionElement f = vertical_line(e, P);
    const FunctionElement g = random_rational_function(rng, e, 2);
    if (!g.is_zero()) f = f * g * g;
    return f;
}

} // namespace oracles
