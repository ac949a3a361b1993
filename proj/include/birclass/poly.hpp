#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "birclass/field.hpp"

namespace birclass {

/// Univariate polynomial over F_p, coefficients stored low-to-high with no
/// trailing zeros. The zero polynomial has an empty coefficient vector and
/// degree -1.
class Poly {
public:
    explicit Poly(std::int64_t p) : p_(p) {}

    static Poly zero(std::int64_t p) { return Poly(p); }
    static Poly constant(std::int64_t p, std::int64_t v) {
        Poly q(p);
        q.c_ = {modarith::normalize(v, p)};
        q.trim();
        return q;
    }
    static Poly one(std::int64_t p) { return constant(p, 1); }
    static Poly x(std::int64_t p) {
        Poly q(p);
        q.c_ = {0, 1};
        return q;
    }
    static Poly from_coeffs(std::int64_t p, std::vector<std::int64_t> coeffs) {
        Poly q(p);
        q.c_ = std::move(coeffs);
        for (auto& v : q.c_) v = modarith::normalize(v, p);
        q.trim();
        return q;
    }

    std::int64_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }
    std::int64_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : 0;
    }
    std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }

    std::int64_t eval(std::int64_t x0) const {
        std::int64_t acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = modarith::add(modarith::mul(acc, x0, p_), *it, p_);
        return acc;
    }

    Poly operator+(const Poly& o) const {
        Poly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = modarith::add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)), p_);
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = modarith::sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)), p_);
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r(p_);
        r.c_ = c_;
        for (auto& v : r.c_) v = modarith::sub(0, v, p_);
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(p_);
        Poly r(p_);
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = modarith::add(r.c_[i + j], modarith::mul(c_[i], o.c_[j], p_), p_);
        r.trim();
        return r;
    }
    Poly scaled(std::int64_t k) const {
        Poly r(p_);
        r.c_ = c_;
        for (auto& v : r.c_) v = modarith::mul(v, modarith::normalize(k, p_), p_);
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(modarith::inv(lead(), p_));
    }

    bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            std::int64_t v = c_[static_cast<size_t>(i)];
            if (v == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || v != 1) s += std::to_string(v);
            if (i > 0) {
                if (v != 1) s += "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::int64_t p_;
    std::vector<std::int64_t> c_;
};

inline std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
    const std::int64_t p = num.modulus();
    if (den.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    Poly q = Poly::zero(p);
    Poly r = num;
    const std::int64_t dlead_inv = modarith::inv(den.lead(), p);
    while (!r.is_zero() && r.degree() >= den.degree()) {
        const int shift = r.degree() - den.degree();
        const std::int64_t factor = modarith::mul(r.lead(), dlead_inv, p);
        std::vector<std::int64_t> t(static_cast<size_t>(shift) + 1, 0);
        t.back() = factor;
        Poly term = Poly::from_coeffs(p, std::move(t));
        q = q + term;
        r = r - term * den;
    }
    return {q, r};
}

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

/// Multiplicity of the root x0 in q (0 when q(x0) != 0). q must be nonzero.
inline int root_multiplicity(const Poly& q, std::int64_t x0) {
    const std::int64_t p = q.modulus();
    Poly lin = Poly::from_coeffs(p, {modarith::sub(0, x0, p), 1});
    Poly cur = q;
    int m = 0;
    while (true) {
        auto [quot, rem] = poly_divmod(cur, lin);
        if (!rem.is_zero()) return m;
        ++m;
        cur = quot;
        if (cur.is_zero()) return m;
    }
}

/// Divide q by (x - x0)^k; q must be exactly divisible.
inline Poly remove_linear_factor(const Poly& q, std::int64_t x0, int k) {
    const std::int64_t p = q.modulus();
    Poly lin = Poly::from_coeffs(p, {modarith::sub(0, x0, p), 1});
    Poly cur = q;
    for (int i = 0; i < k; ++i) cur = poly_divmod(cur, lin).first;
    return cur;
}

} // namespace birclass
