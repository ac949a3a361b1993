#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "birclass/field.hpp"
#include "birclass/poly.hpp"

namespace birclass {

/// A rational point of an elliptic curve: affine (x, y) or the point at
/// infinity, which is the neutral element of the group law.
class CurvePoint {
public:
    static CurvePoint infinity() { return CurvePoint(); }
    static CurvePoint affine(std::int64_t x, std::int64_t y, std::int64_t p) {
        CurvePoint q;
        q.inf_ = false;
        q.x_ = modarith::normalize(x, p);
        q.y_ = modarith::normalize(y, p);
        return q;
    }

    bool is_infinity() const { return inf_; }
    std::int64_t x() const { return x_; }
    std::int64_t y() const { return y_; }

    bool operator==(const CurvePoint& o) const {
        if (inf_ || o.inf_) return inf_ == o.inf_;
        return x_ == o.x_ && y_ == o.y_;
    }
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
    // infinity sorts first, then lexicographic (x, y)
    bool operator<(const CurvePoint& o) const {
        if (inf_ != o.inf_) return inf_;
        if (inf_) return false;
        return std::tie(x_, y_) < std::tie(o.x_, o.y_);
    }

    std::string str() const {
        if (inf_) return "O";
        return "(" + std::to_string(x_) + "," + std::to_string(y_) + ")";
    }

private:
    CurvePoint() : inf_(true), x_(0), y_(0) {}
    bool inf_;
    std::int64_t x_;
    std::int64_t y_;
};

/// Short-Weierstrass curve y^2 = x^3 + a*x + b over F_p, p prime > 3.
class EllipticCurve {
public:
    EllipticCurve(std::int64_t p, std::int64_t a, std::int64_t b)
        : p_(p), a_(modarith::normalize(a, p)), b_(modarith::normalize(b, p)) {
        if (p <= 3 || !is_prime(p))
            fail("InvalidCurve", "modulus must be a prime > 3, got " + std::to_string(p));
        const std::int64_t disc =
            modarith::add(modarith::mul(4, modarith::pow(a_, 3, p_), p_),
                          modarith::mul(27, modarith::mul(b_, b_, p_), p_), p_);
        if (disc == 0)
            fail("InvalidCurve", "singular curve: 4a^3 + 27b^2 = 0 mod " + std::to_string(p));
    }

    std::int64_t p() const { return p_; }
    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }

    bool operator==(const EllipticCurve& o) const {
        return p_ == o.p_ && a_ == o.a_ && b_ == o.b_;
    }
    bool operator!=(const EllipticCurve& o) const { return !(*this == o); }

    /// x^3 + a*x + b as a polynomial over F_p.
    Poly rhs_poly() const { return Poly::from_coeffs(p_, {b_, a_, 0, 1}); }

    std::int64_t rhs(std::int64_t x) const {
        const std::int64_t x2 = modarith::mul(x, x, p_);
        return modarith::add(modarith::add(modarith::mul(x2, x, p_), modarith::mul(a_, x, p_), p_),
                             b_, p_);
    }

    bool on_curve(const CurvePoint& q) const {
        if (q.is_infinity()) return true;
        return modarith::mul(q.y(), q.y(), p_) == rhs(q.x());
    }

    std::string str() const {
        return "y^2 = x^3 + " + std::to_string(a_) + "*x + " + std::to_string(b_) +
               " over F_" + std::to_string(p_);
    }

private:
    std::int64_t p_;
    std::int64_t a_;
    std::int64_t b_;
};

inline void require_on_curve(const EllipticCurve& e, const CurvePoint& q) {
    if (!e.on_curve(q)) fail("PointNotOnCurve", q.str() + " is not on " + e.str());
}

inline CurvePoint point_neg(const EllipticCurve& e, const CurvePoint& q) {
    require_on_curve(e, q);
    if (q.is_infinity()) return q;
    return CurvePoint::affine(q.x(), modarith::sub(0, q.y(), e.p()), e.p());
}

/// Chord-and-tangent addition.
inline CurvePoint point_add(const EllipticCurve& e, const CurvePoint& P, const CurvePoint& Q) {
    require_on_curve(e, P);
    require_on_curve(e, Q);
    const std::int64_t p = e.p();
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    if (P.x() == Q.x()) {
        if (P.y() != Q.y() || P.y() == 0) return CurvePoint::infinity();
        // tangent
        const std::int64_t num = modarith::add(modarith::mul(3, modarith::mul(P.x(), P.x(), p), p), e.a(), p);
        const std::int64_t lam = modarith::mul(num, modarith::inv(modarith::mul(2, P.y(), p), p), p);
        const std::int64_t x3 = modarith::sub(modarith::mul(lam, lam, p), modarith::mul(2, P.x(), p), p);
        const std::int64_t y3 = modarith::sub(modarith::mul(lam, modarith::sub(P.x(), x3, p), p), P.y(), p);
        return CurvePoint::affine(x3, y3, p);
    }
    const std::int64_t lam = modarith::mul(modarith::sub(Q.y(), P.y(), p),
                                           modarith::inv(modarith::sub(Q.x(), P.x(), p), p), p);
    const std::int64_t x3 = modarith::sub(modarith::sub(modarith::mul(lam, lam, p), P.x(), p), Q.x(), p);
    const std::int64_t y3 = modarith::sub(modarith::mul(lam, modarith::sub(P.x(), x3, p), p), P.y(), p);
    return CurvePoint::affine(x3, y3, p);
}

inline CurvePoint point_sub(const EllipticCurve& e, const CurvePoint& P, const CurvePoint& Q) {
    return point_add(e, P, point_neg(e, Q));
}

inline CurvePoint scalar_mul(const EllipticCurve& e, std::int64_t n, const CurvePoint& P) {
    require_on_curve(e, P);
    CurvePoint base = n < 0 ? point_neg(e, P) : P;
    std::int64_t k = n < 0 ? -n : n;
    CurvePoint acc = CurvePoint::infinity();
    while (k > 0) {
        if (k & 1) acc = point_add(e, acc, base);
        base = point_add(e, base, base);
        k >>= 1;
    }
    return acc;
}

/// All rational points, infinity first, affine points in (x, y) order.
inline std::vector<CurvePoint> enumerate_points(const EllipticCurve& e) {
    std::vector<CurvePoint> pts;
    pts.push_back(CurvePoint::infinity());
    const std::int64_t p = e.p();
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t r = e.rhs(x);
        for (std::int64_t y = 0; y < p; ++y)
            if (modarith::mul(y, y, p) == r) pts.push_back(CurvePoint::affine(x, y, p));
    }
    return pts;
}

inline std::int64_t point_order(const EllipticCurve& e, const CurvePoint& P) {
    require_on_curve(e, P);
    std::int64_t n = 1;
    CurvePoint acc = P;
    while (!acc.is_infinity()) {
        acc = point_add(e, acc, P);
        ++n;
    }
    return n;
}

/// First point of exact order n in canonical order, if any.
inline std::optional<CurvePoint> find_torsion(const EllipticCurve& e, std::int64_t n) {
    if (n < 1) fail("InvalidModel", "torsion order must be >= 1");
    for (const auto& q : enumerate_points(e))
        if (point_order(e, q) == n) return q;
    return std::nullopt;
}

} // namespace birclass
