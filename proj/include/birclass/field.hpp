#pragma once

#include <cstdint>

#include "birclass/errors.hpp"

namespace birclass {

namespace modarith {

inline std::int64_t normalize(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t add(std::int64_t a, std::int64_t b, std::int64_t p) {
    return normalize(a + b, p);
}

inline std::int64_t sub(std::int64_t a, std::int64_t b, std::int64_t p) {
    return normalize(a - b, p);
}

inline std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

inline std::int64_t pow(std::int64_t base, std::int64_t e, std::int64_t p) {
    std::int64_t acc = 1 % p;
    base = normalize(base, p);
    while (e > 0) {
        if (e & 1) acc = mul(acc, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return acc;
}

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
    a = normalize(a, p);
    if (a == 0) fail("DivisionByZero", "inverse of 0 mod " + std::to_string(p));
    // extended Euclid
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    return normalize(s0, p);
}

} // namespace modarith

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Element of F_p for an odd prime p > 3.
class FieldElement {
public:
    FieldElement(std::int64_t value, std::int64_t modulus)
        : v_(modarith::normalize(value, modulus)), p_(modulus) {
        if (modulus <= 3 || !is_prime(modulus))
            fail("InvalidModulus", "modulus must be a prime > 3, got " + std::to_string(modulus));
    }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const { return raw(modarith::add(v_, o.v_, p_), p_); }
    FieldElement operator-(const FieldElement& o) const { return raw(modarith::sub(v_, o.v_, p_), p_); }
    FieldElement operator*(const FieldElement& o) const { return raw(modarith::mul(v_, o.v_, p_), p_); }
    FieldElement operator/(const FieldElement& o) const { return raw(modarith::mul(v_, modarith::inv(o.v_, p_), p_), p_); }
    FieldElement operator-() const { return raw(modarith::sub(0, v_, p_), p_); }

    FieldElement inverse() const { return raw(modarith::inv(v_, p_), p_); }
    FieldElement pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        return raw(modarith::pow(v_, e, p_), p_);
    }

    bool operator==(const FieldElement& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    static FieldElement raw(std::int64_t v, std::int64_t p) {
        FieldElement e;
        e.v_ = v;
        e.p_ = p;
        return e;
    }
    FieldElement() : v_(0), p_(5) {}

    std::int64_t v_;
    std::int64_t p_;
};

} // namespace birclass
