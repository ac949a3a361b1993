#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "birclass/divisor.hpp"
#include "birclass/poly.hpp"

namespace birclass {

/// Element of the function field of y^2 = x^3 + a*x + b, kept in the canonical
/// form (a(x) + b(x)*y) / c(x) with c monic and gcd(a, b, c) = 1. The
/// representation is unique, so equality is componentwise.
class FunctionElement {
public:
    FunctionElement(const EllipticCurve& curve, Poly a, Poly b, Poly c)
        : curve_(curve), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        if (c_.is_zero()) fail("DivisionByZero", "zero denominator in function element");
        canonicalize();
    }

    static FunctionElement zero(const EllipticCurve& e) {
        return FunctionElement(e, Poly::zero(e.p()), Poly::zero(e.p()), Poly::one(e.p()));
    }
    static FunctionElement one(const EllipticCurve& e) { return constant(e, 1); }
    static FunctionElement constant(const EllipticCurve& e, std::int64_t v) {
        return FunctionElement(e, Poly::constant(e.p(), v), Poly::zero(e.p()), Poly::one(e.p()));
    }
    static FunctionElement from_poly(const EllipticCurve& e, Poly a) {
        return FunctionElement(e, std::move(a), Poly::zero(e.p()), Poly::one(e.p()));
    }
    static FunctionElement coordinate_x(const EllipticCurve& e) {
        return from_poly(e, Poly::x(e.p()));
    }
    static FunctionElement coordinate_y(const EllipticCurve& e) {
        return FunctionElement(e, Poly::zero(e.p()), Poly::one(e.p()), Poly::one(e.p()));
    }

    const EllipticCurve& curve() const { return curve_; }
    const Poly& num_a() const { return a_; }
    const Poly& num_b() const { return b_; }
    const Poly& den() const { return c_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_constant() const { return b_.is_zero() && c_.degree() == 0 && a_.degree() <= 0; }

    FunctionElement operator+(const FunctionElement& o) const {
        require_same_curve(o);
        return FunctionElement(curve_, a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_);
    }
    FunctionElement operator-(const FunctionElement& o) const {
        require_same_curve(o);
        return FunctionElement(curve_, a_ * o.c_ - o.a_ * c_, b_ * o.c_ - o.b_ * c_, c_ * o.c_);
    }
    FunctionElement operator-() const { return FunctionElement(curve_, -a_, -b_, c_); }

    FunctionElement operator*(const FunctionElement& o) const {
        require_same_curve(o);
        const Poly E = curve_.rhs_poly();
        // (a1 + b1 y)(a2 + b2 y) = a1 a2 + b1 b2 E + (a1 b2 + a2 b1) y
        return FunctionElement(curve_, a_ * o.a_ + b_ * o.b_ * E, a_ * o.b_ + o.a_ * b_, c_ * o.c_);
    }

    /// 1/f via the conjugate: c (a - b y) / (a^2 - b^2 E).
    FunctionElement inverse() const {
        if (is_zero()) fail("DivisionByZero", "inverse of the zero function");
        const Poly E = curve_.rhs_poly();
        const Poly norm = a_ * a_ - b_ * b_ * E; // nonzero: deg(a^2) even, deg(b^2 E) odd
        return FunctionElement(curve_, c_ * a_, -(c_ * b_), norm);
    }

    FunctionElement operator/(const FunctionElement& o) const {
        if (o.is_zero()) fail("DivisionByZero", "division by the zero function");
        return *this * o.inverse();
    }

    FunctionElement pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        FunctionElement acc = one(curve_);
        FunctionElement base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /// Scalar-normalized copy: leading coefficient of a (or of b when a = 0)
    /// rescaled to 1. Used to make constructed witnesses deterministic.
    FunctionElement scaled_canonical() const {
        if (is_zero()) return *this;
        const std::int64_t lead = a_.is_zero() ? b_.lead() : a_.lead();
        const std::int64_t k = modarith::inv(lead, curve_.p());
        return FunctionElement(curve_, a_.scaled(k), b_.scaled(k), c_);
    }

    bool operator==(const FunctionElement& o) const {
        return curve_ == o.curve_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }
    bool operator!=(const FunctionElement& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string num;
        if (!a_.is_zero()) num = a_.str();
        if (!b_.is_zero()) {
            if (!num.empty()) num += " + ";
            num += "(" + b_.str() + ")*y";
        }
        if (c_.degree() == 0) return num;
        return "(" + num + ") / (" + c_.str() + ")";
    }

    void require_same_curve(const FunctionElement& o) const {
        if (curve_ != o.curve_) fail("CurveMismatch", "function elements on different curves");
    }

private:
    void canonicalize() {
        if (a_.is_zero() && b_.is_zero()) {
            c_ = Poly::one(curve_.p());
            return;
        }
        Poly g = poly_gcd(poly_gcd(a_, b_), c_);
        if (!g.is_zero() && g.degree() > 0) {
            a_ = poly_divmod(a_, g).first;
            b_ = poly_divmod(b_, g).first;
            c_ = poly_divmod(c_, g).first;
        }
        const std::int64_t lead_inv = modarith::inv(c_.lead(), curve_.p());
        a_ = a_.scaled(lead_inv);
        b_ = b_.scaled(lead_inv);
        c_ = c_.monic();
    }

    EllipticCurve curve_;
    Poly a_;
    Poly b_;
    Poly c_;
};

namespace detail {

// valuation of a nonzero polynomial in x at a rational point
inline std::int64_t val_poly_at(const Poly& q, const EllipticCurve& e, const CurvePoint& P) {
    if (P.is_infinity()) return -2 * q.degree();
    const int m = root_multiplicity(q, P.x());
    return P.y() == 0 ? 2 * m : m; // x - x0 is a square of the uniformizer at 2-torsion
}

// valuation of a + b*y (not both zero) at a rational point
inline std::int64_t val_numerator_at(const Poly& a, const Poly& b, const EllipticCurve& e,
                                     const CurvePoint& P) {
    if (P.is_infinity()) {
        // v(x) = -2, v(y) = -3; the two parts have opposite parities, so no
        // cancellation can occur and the minimum is exact.
        std::int64_t v = INT64_MAX;
        if (!a.is_zero()) v = std::min(v, static_cast<std::int64_t>(-2 * a.degree()));
        if (!b.is_zero()) v = std::min(v, static_cast<std::int64_t>(-2 * b.degree() - 3));
        return v;
    }
    const std::int64_t p = e.p();
    if (b.is_zero()) return val_poly_at(a, e, P);
    if (a.is_zero()) return val_poly_at(b, e, P) + (P.y() == 0 ? 1 : 0);

    const int ka = root_multiplicity(a, P.x());
    const int kb = root_multiplicity(b, P.x());
    const int k = std::min(ka, kb);
    const Poly a1 = remove_linear_factor(a, P.x(), k);
    const Poly b1 = remove_linear_factor(b, P.x(), k);

    if (P.y() == 0) {
        // v(a1) is even, v(b1 y) is odd: the minimum is always exact.
        return 2 * k + std::min<std::int64_t>(2 * (ka - k), 2 * (kb - k) + 1);
    }

    const std::int64_t base = k;
    const std::int64_t direct =
        modarith::add(a1.eval(P.x()), modarith::mul(b1.eval(P.x()), P.y(), p), p);
    if (direct != 0) return base;
    // a1 + b1 y vanishes at P but its conjugate a1 - b1 y does not (a1, b1 have
    // no common root at x0 after factor extraction), so
    // v(a1 + b1 y) = v(a1^2 - b1^2 E) - v(a1 - b1 y) = mult of the norm.
    const Poly norm = a1 * a1 - b1 * b1 * e.rhs_poly();
    return base + root_multiplicity(norm, P.x());
}

} // namespace detail

/// Order of vanishing of f at the rational point P (negative at poles).
inline std::int64_t valuation_at(const FunctionElement& f, const CurvePoint& P) {
    if (f.is_zero()) fail("ZeroFunction", "valuation of the zero function");
    require_on_curve(f.curve(), P);
    return detail::val_numerator_at(f.num_a(), f.num_b(), f.curve(), P) -
           detail::val_poly_at(f.den(), f.curve(), P);
}

/// Divisor of zeros and poles of f over the rational points. Fails with
/// NonRationalSupport when some zero or pole lies outside the rational model
/// (detected by the degree not summing to zero).
inline Divisor divisor_of(const FunctionElement& f) {
    if (f.is_zero()) fail("ZeroFunction", "divisor of the zero function");
    Divisor d(f.curve());
    for (const auto& P : enumerate_points(f.curve())) {
        const std::int64_t v = valuation_at(f, P);
        if (v != 0) d.add_point(P, v);
    }
    if (d.degree() != 0)
        fail("NonRationalSupport",
             "function has zeros or poles outside the rational points (rational degree " +
                 std::to_string(d.degree()) + ")");
    return d;
}

/// The vertical line x - x_P through an affine point and its negative.
inline FunctionElement vertical_line(const EllipticCurve& e, const CurvePoint& P) {
    require_on_curve(e, P);
    if (P.is_infinity()) fail("InvalidModel", "no vertical line through the neutral point");
    return FunctionElement::from_poly(
        e, Poly::from_coeffs(e.p(), {modarith::sub(0, P.x(), e.p()), 1}));
}

/// The line through P and Q (tangent when P = Q), as a function with divisor
/// (P) + (Q) + (-(P+Q)) - 3(O); for an inverse pair this is the vertical line.
inline FunctionElement line_through(const EllipticCurve& e, const CurvePoint& P,
                                    const CurvePoint& Q) {
    require_on_curve(e, P);
    require_on_curve(e, Q);
    if (P.is_infinity() || Q.is_infinity())
        fail("InvalidModel", "line construction requires affine points");
    const std::int64_t p = e.p();
    if (P.x() == Q.x() && (P.y() != Q.y() || P.y() == 0)) return vertical_line(e, P);
    std::int64_t lam;
    if (P == Q) {
        const std::int64_t num = modarith::add(modarith::mul(3, modarith::mul(P.x(), P.x(), p), p), e.a(), p);
        lam = modarith::mul(num, modarith::inv(modarith::mul(2, P.y(), p), p), p);
    } else {
        lam = modarith::mul(modarith::sub(Q.y(), P.y(), p), modarith::inv(modarith::sub(Q.x(), P.x(), p), p), p);
    }
    // y - lam*x + (lam*x_P - y_P)
    const Poly a = Poly::from_coeffs(
        p, {modarith::sub(modarith::mul(lam, P.x(), p), P.y(), p), modarith::sub(0, lam, p)});
    return FunctionElement(e, a, Poly::one(p), Poly::one(p));
}

/// Constructs f with div(f) = d exactly, by chord-and-tangent reduction: each
/// step trades two same-sign affine support points for their group sum using
/// the line through them over the vertical at the sum.
inline FunctionElement principality_witness(const Divisor& d) {
    if (!is_principal(d))
        fail("NotPrincipal", "divisor has nonzero degree or group-sum");
    const EllipticCurve& e = d.curve();
    FunctionElement acc = FunctionElement::one(e);
    Divisor rem = d;

    auto pick_two = [&](int sign) -> std::optional<std::pair<CurvePoint, CurvePoint>> {
        std::optional<CurvePoint> first;
        for (const auto& [pt, n] : rem.coefficients()) {
            if (pt.is_infinity() || sign * n <= 0) continue;
            if (sign * n >= 2) return std::make_pair(pt, pt);
            if (first) return std::make_pair(*first, pt);
            first = pt;
        }
        return std::nullopt;
    };

    while (true) {
        int sign = 1;
        auto pair = pick_two(+1);
        if (!pair) {
            pair = pick_two(-1);
            sign = -1;
        }
        if (!pair) break;
        const auto [P, Q] = *pair;
        const CurvePoint S = point_add(e, P, Q);
        FunctionElement step = S.is_infinity()
                                   ? vertical_line(e, P)
                                   : line_through(e, P, Q) / vertical_line(e, S);
        Divisor step_div(e);
        step_div.add_point(P).add_point(Q);
        if (!S.is_infinity()) step_div.add_point(S, -1).add_point(CurvePoint::infinity(), -1);
        else step_div.add_point(CurvePoint::infinity(), -2);
        if (sign > 0) {
            acc = acc * step;
            rem = rem - step_div;
        } else {
            acc = acc / step;
            rem = rem + step_div;
        }
    }
    // principality forces the remainder to vanish entirely
    if (!rem.empty()) fail("NotPrincipal", "reduction left a nonzero remainder");
    return acc.scaled_canonical();
}

/// Square class in K^*/(k^* (K^*)^2): constants are quotiented out, so the
/// verdict depends only on the divisor. Square iff div(f) is even with a
/// principal half.
struct SquareClass {
    enum class Verdict { Square, NonSquare };

    Verdict verdict;
    std::optional<Divisor> half;        // Square: the principal half of div(f);
                                        // NonSquare with even divisor: the non-principal half
    std::optional<CurvePoint> odd_point; // NonSquare: a point of odd valuation, when one exists

    bool is_square() const { return verdict == Verdict::Square; }
};

inline SquareClass is_square_class(const FunctionElement& f) {
    const Divisor d = divisor_of(f); // ZeroFunction / NonRationalSupport propagate
    for (const auto& [pt, n] : d.coefficients()) {
        if (n % 2 != 0) {
            SquareClass r{SquareClass::Verdict::NonSquare, std::nullopt, pt};
            return r;
        }
    }
    Divisor half(d.curve());
    for (const auto& [pt, n] : d.coefficients()) half.add_point(pt, n / 2);
    if (is_principal(half)) return SquareClass{SquareClass::Verdict::Square, half, std::nullopt};
    return SquareClass{SquareClass::Verdict::NonSquare, half, std::nullopt};
}

inline bool same_square_class(const FunctionElement& f, const FunctionElement& g) {
    return is_square_class(f / g).is_square();
}

/// Exact value of f at P. Zero when v_P(f) > 0; fails with PoleAtPoint when
/// v_P(f) < 0. When v = 0 the common (x - x_P)-power of the numerator norm and
/// the denominator is cancelled before substituting.
inline std::int64_t eval_at(const FunctionElement& f, const CurvePoint& P) {
    if (f.is_zero()) fail("ZeroFunction", "evaluation of the zero function");
    const std::int64_t v = valuation_at(f, P);
    if (v < 0) fail("PoleAtPoint", "pole at " + P.str());
    if (v > 0) return 0;
    const EllipticCurve& e = f.curve();
    const std::int64_t p = e.p();
    const Poly &a = f.num_a(), &b = f.num_b(), &c = f.den();

    if (P.is_infinity()) {
        // v = 0 forces deg a = deg c with the y-part vanishing faster
        return modarith::mul(a.lead(), modarith::inv(c.lead(), p), p);
    }
    const std::int64_t cval = c.eval(P.x());
    const std::int64_t nval = b.is_zero()
                                  ? a.eval(P.x())
                                  : modarith::add(a.eval(P.x()), modarith::mul(b.eval(P.x()), P.y(), p), p);
    if (cval != 0) return modarith::mul(nval, modarith::inv(cval, p), p);
    // c vanishes at x_P: only reachable at a point with y != 0 (the reduced
    // representation rules it out at 2-torsion). Rationalize by the conjugate:
    // f = norm / (c * (a - b y)) and cancel the common power of (x - x_P).
    const Poly norm = a * a - b * b * e.rhs_poly();
    const int m = root_multiplicity(c, P.x());
    const Poly norm_red = remove_linear_factor(norm, P.x(), m);
    const Poly c_red = remove_linear_factor(c, P.x(), m);
    const std::int64_t conj =
        modarith::sub(a.eval(P.x()), modarith::mul(b.eval(P.x()), P.y(), p), p);
    const std::int64_t den_val = modarith::mul(c_red.eval(P.x()), conj, p);
    return modarith::mul(norm_red.eval(P.x()), modarith::inv(den_val, p), p);
}

/// Product of f(P)^{n_P} over the support of d. Requires f to have neither
/// zero nor pole on the support.
inline std::int64_t evaluate_on_divisor(const FunctionElement& f, const Divisor& d) {
    if (f.curve() != d.curve()) fail("CurveMismatch", "function and divisor on different curves");
    const std::int64_t p = f.curve().p();
    std::int64_t acc = 1;
    for (const auto& [pt, n] : d.coefficients()) {
        const std::int64_t v = eval_at(f, pt);
        if (v == 0) fail("SupportOverlap", "zero of the function meets the divisor support");
        acc = modarith::mul(acc, modarith::pow(n >= 0 ? v : modarith::inv(v, p), n >= 0 ? n : -n, p), p);
    }
    return acc;
}

} // namespace birclass
