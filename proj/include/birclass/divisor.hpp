#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "birclass/curve.hpp"

namespace birclass {

/// Formal Z-linear combination of rational points of a fixed elliptic curve.
/// Zero coefficients are never stored.
class Divisor {
public:
    explicit Divisor(const EllipticCurve& curve) : curve_(curve) {}

    const EllipticCurve& curve() const { return curve_; }
    const std::map<CurvePoint, std::int64_t>& coefficients() const { return coeff_; }

    std::int64_t coefficient(const CurvePoint& P) const {
        auto it = coeff_.find(P);
        return it == coeff_.end() ? 0 : it->second;
    }

    Divisor& add_point(const CurvePoint& P, std::int64_t n = 1) {
        require_on_curve(curve_, P);
        if (n == 0) return *this;
        auto [it, inserted] = coeff_.emplace(P, n);
        if (!inserted) {
            it->second += n;
            if (it->second == 0) coeff_.erase(it);
        }
        return *this;
    }

    bool empty() const { return coeff_.empty(); }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (const auto& [pt, n] : coeff_) d += n;
        return d;
    }

    /// Total coefficient mass sum |n_P|.
    std::int64_t mass() const {
        std::int64_t m = 0;
        for (const auto& [pt, n] : coeff_) m += n < 0 ? -n : n;
        return m;
    }

    Divisor operator+(const Divisor& o) const {
        require_same_curve(o);
        Divisor r = *this;
        for (const auto& [pt, n] : o.coeff_) r.add_point(pt, n);
        return r;
    }
    Divisor operator-(const Divisor& o) const {
        require_same_curve(o);
        Divisor r = *this;
        for (const auto& [pt, n] : o.coeff_) r.add_point(pt, -n);
        return r;
    }
    Divisor operator-() const {
        Divisor r(curve_);
        for (const auto& [pt, n] : coeff_) r.coeff_.emplace(pt, -n);
        return r;
    }
    Divisor scaled(std::int64_t k) const {
        Divisor r(curve_);
        if (k == 0) return r;
        for (const auto& [pt, n] : coeff_) r.coeff_.emplace(pt, k * n);
        return r;
    }

    bool operator==(const Divisor& o) const { return curve_ == o.curve_ && coeff_ == o.coeff_; }
    bool operator!=(const Divisor& o) const { return !(*this == o); }

    std::string str() const {
        if (coeff_.empty()) return "0";
        std::string s;
        for (const auto& [pt, n] : coeff_) {
            if (!s.empty()) s += " ";
            if (n >= 0 && !s.empty()) s += "+ ";
            else if (n < 0) s += s.empty() ? "-" : "- ";
            const std::int64_t m = n < 0 ? -n : n;
            if (m != 1) s += std::to_string(m) + "*";
            s += "(" + pt.str() + ")";
        }
        return s;
    }

    void require_same_curve(const Divisor& o) const {
        if (curve_ != o.curve_)
            fail("CurveMismatch", "divisors live on different curves");
    }

private:
    EllipticCurve curve_;
    std::map<CurvePoint, std::int64_t> coeff_;
};

/// Sum of n_P * P under the curve group law.
inline CurvePoint group_sum(const Divisor& d) {
    CurvePoint acc = CurvePoint::infinity();
    for (const auto& [pt, n] : d.coefficients())
        acc = point_add(d.curve(), acc, scalar_mul(d.curve(), n, pt));
    return acc;
}

/// Abel criterion: principal iff degree 0 and group-sum is the neutral point.
inline bool is_principal(const Divisor& d) {
    return d.degree() == 0 && group_sum(d).is_infinity();
}

inline bool is_linearly_equivalent(const Divisor& d1, const Divisor& d2) {
    d1.require_same_curve(d2);
    return is_principal(d1 - d2);
}

/// Pullback of d under translation by t: every support point P becomes P - t.
inline Divisor translate_divisor(const Divisor& d, const CurvePoint& t) {
    require_on_curve(d.curve(), t);
    Divisor r(d.curve());
    for (const auto& [pt, n] : d.coefficients())
        r.add_point(point_sub(d.curve(), pt, t), n);
    return r;
}

} // namespace birclass
