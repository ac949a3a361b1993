#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "birclass/funcfield.hpp"

namespace birclass {

/// Element of PGL(2, K) over the function field, stored with the canonical
/// scaling that makes the first nonzero entry (row-major) equal to 1, so that
/// equality in the projective group is entrywise equality.
class PGLMat {
public:
    PGLMat(const EllipticCurve& curve, FunctionElement m00, FunctionElement m01,
           FunctionElement m10, FunctionElement m11)
        : curve_(curve), m_{std::move(m00), std::move(m01), std::move(m10), std::move(m11)} {
        canonicalize();
        if (det().is_zero()) fail("SingularMatrix", "matrix has zero determinant");
    }

    static PGLMat identity(const EllipticCurve& e) {
        return PGLMat(e, FunctionElement::one(e), FunctionElement::zero(e),
                      FunctionElement::zero(e), FunctionElement::one(e));
    }
    /// sigma_f = [[0, f], [1, 0]], the normal form of a non-diagonalizable involution.
    static PGLMat sigma(const FunctionElement& f) {
        const EllipticCurve& e = f.curve();
        return PGLMat(e, FunctionElement::zero(e), f, FunctionElement::one(e),
                      FunctionElement::zero(e));
    }
    static PGLMat diagonal(const FunctionElement& g, const FunctionElement& h) {
        const EllipticCurve& e = g.curve();
        return PGLMat(e, g, FunctionElement::zero(e), FunctionElement::zero(e), h);
    }
    /// tau_{a,b} = [[a, -b f], [b, -a]], the odd part of the normalizer of sigma_f.
    static PGLMat odd_normalizer(const FunctionElement& f, const FunctionElement& a,
                                 const FunctionElement& b) {
        return PGLMat(f.curve(), a, -(b * f), b, -a);
    }

    const EllipticCurve& curve() const { return curve_; }
    const FunctionElement& entry(int i, int j) const { return m_[static_cast<size_t>(2 * i + j)]; }

    FunctionElement det() const {
        return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
    }

    bool is_identity() const { return *this == identity(curve_); }

    bool operator==(const PGLMat& o) const { return curve_ == o.curve_ && m_ == o.m_; }
    bool operator!=(const PGLMat& o) const { return !(*this == o); }

    std::string str() const {
        return "[[" + entry(0, 0).str() + ", " + entry(0, 1).str() + "], [" + entry(1, 0).str() +
               ", " + entry(1, 1).str() + "]]";
    }

private:
    void canonicalize() {
        for (auto& e : m_) {
            if (!e.is_zero()) {
                const FunctionElement pivot = e;
                for (auto& f : m_) f = f / pivot;
                return;
            }
        }
        fail("SingularMatrix", "zero matrix");
    }

    EllipticCurve curve_;
    std::array<FunctionElement, 4> m_;
};

inline PGLMat pgl_mul(const PGLMat& A, const PGLMat& B) {
    if (A.curve() != B.curve()) fail("CurveMismatch", "matrices over different curves");
    return PGLMat(A.curve(),
                  A.entry(0, 0) * B.entry(0, 0) + A.entry(0, 1) * B.entry(1, 0),
                  A.entry(0, 0) * B.entry(0, 1) + A.entry(0, 1) * B.entry(1, 1),
                  A.entry(1, 0) * B.entry(0, 0) + A.entry(1, 1) * B.entry(1, 0),
                  A.entry(1, 0) * B.entry(0, 1) + A.entry(1, 1) * B.entry(1, 1));
}

inline PGLMat pgl_inverse(const PGLMat& A) {
    return PGLMat(A.curve(), A.entry(1, 1), -A.entry(0, 1), -A.entry(1, 0), A.entry(0, 0));
}

inline PGLMat pgl_conjugate(const PGLMat& G, const PGLMat& A) {
    return pgl_mul(pgl_mul(G, A), pgl_inverse(G));
}

/// Point of P^1(K) in homogeneous coordinates (u : v), not both zero.
using ProjPoint = std::pair<FunctionElement, FunctionElement>;

/// Moebius action (u : v) -> (m00 u + m01 v : m10 u + m11 v). Provided for
/// testing; fixed loci are computed divisor-theoretically.
inline ProjPoint mobius_apply(const PGLMat& A, const ProjPoint& q) {
    return {A.entry(0, 0) * q.first + A.entry(0, 1) * q.second,
            A.entry(1, 0) * q.first + A.entry(1, 1) * q.second};
}

inline bool proj_equal(const ProjPoint& a, const ProjPoint& b) {
    return (a.first * b.second - a.second * b.first).is_zero();
}

/// Square class of the determinant of any representative. Rescaling changes
/// the determinant by a square, so the class is well defined.
inline SquareClass det_class(const PGLMat& A) { return is_square_class(A.det()); }

inline bool is_involution(const PGLMat& A) {
    return !A.is_identity() && pgl_mul(A, A).is_identity();
}

struct InvolutionNormalForm {
    FunctionElement f;
    PGLMat conjugator; // conjugator * A * conjugator^-1 = sigma_f
};

/// Conjugates an involution to sigma_f = [[0, f], [1, 0]] by taking a basis
/// {v, A v} for any non-fixed v.
inline InvolutionNormalForm involution_normal_form(const PGLMat& A) {
    if (!is_involution(A)) fail("NotInvolution", "matrix is not a nontrivial involution");
    const EllipticCurve& e = A.curve();
    if (A.entry(0, 0).is_zero() && A.entry(1, 1).is_zero())
        return InvolutionNormalForm{A.entry(0, 1) / A.entry(1, 0), PGLMat::identity(e)};
    const FunctionElement zero = FunctionElement::zero(e);
    const FunctionElement one = FunctionElement::one(e);
    const std::array<ProjPoint, 3> candidates{
        ProjPoint{one, zero}, ProjPoint{zero, one}, ProjPoint{one, one}};
    for (const auto& v : candidates) {
        const ProjPoint w = mobius_apply(A, v);
        if (proj_equal(v, w)) continue;
        const PGLMat basis(e, v.first, w.first, v.second, w.second);
        const PGLMat conj = pgl_inverse(basis);
        const PGLMat nf = pgl_conjugate(conj, A);
        // nf = [[0, f], [1, 0]] after canonical scaling
        const FunctionElement f = nf.entry(0, 1) / nf.entry(1, 0);
        return InvolutionNormalForm{f, conj};
    }
    fail("NotInvolution", "involution fixes three independent points"); // unreachable
}

/// sigma_f and sigma_g are conjugate iff f/g is a square (modulo constants).
inline bool involutions_conjugate(const FunctionElement& f, const FunctionElement& g) {
    if (f.is_zero() || g.is_zero()) fail("ZeroFunction", "conjugacy test needs nonzero functions");
    return is_square_class(f / g).is_square();
}

/// When f/g = lambda^2 for an explicit lambda in K, diag(1, 1/lambda)
/// conjugates sigma_g to sigma_f. Constructible whenever the constant part of
/// the class is a square in F_p; otherwise empty.
inline std::optional<PGLMat> explicit_conjugator(const FunctionElement& f,
                                                 const FunctionElement& g) {
    const FunctionElement q = f / g;
    const SquareClass cls = is_square_class(q);
    if (!cls.is_square()) return std::nullopt;
    const FunctionElement h = principality_witness(*cls.half);
    // q = c * h^2 with c constant; need sqrt of c in F_p
    const FunctionElement c_fn = q / (h * h);
    const std::int64_t p = f.curve().p();
    const std::int64_t c = c_fn.num_a().coeff(0);
    for (std::int64_t s = 0; s < p; ++s) {
        if (modarith::mul(s, s, p) == c) {
            const FunctionElement lambda = h * FunctionElement::constant(f.curve(), s);
            return PGLMat::diagonal(FunctionElement::one(f.curve()), lambda.inverse());
        }
    }
    return std::nullopt;
}

struct NormalizerPart {
    enum class Kind { Even, Odd, NotMember };
    Kind kind = Kind::NotMember;
    std::optional<FunctionElement> a;
    std::optional<FunctionElement> b;
};

/// Membership of M in the normalizer of <sigma_f>: the even part consists of
/// [[a, b f], [b, a]] and the odd part of [[a, -b f], [b, -a]], up to scalar.
/// The returned pair is scaled so b = 1 when b != 0, else a = 1.
inline NormalizerPart normalizer_decompose(const PGLMat& M, const FunctionElement& f) {
    if (f.is_zero()) fail("ZeroFunction", "normalizer of sigma_0 is undefined");
    if (is_square_class(f).is_square())
        fail("SquareF", "normalizer decomposition requires a nonsquare f");
    auto canonical = [&](FunctionElement a, FunctionElement b) -> NormalizerPart {
        NormalizerPart r;
        if (!b.is_zero()) {
            r.a = a / b;
            r.b = FunctionElement::one(f.curve());
        } else {
            r.a = FunctionElement::one(f.curve());
            r.b = b;
        }
        return r;
    };
    const FunctionElement &m00 = M.entry(0, 0), &m01 = M.entry(0, 1);
    const FunctionElement &m10 = M.entry(1, 0), &m11 = M.entry(1, 1);
    if (m00 == m11 && m01 == m10 * f) {
        NormalizerPart r = canonical(m00, m10);
        r.kind = NormalizerPart::Kind::Even;
        return r;
    }
    if (m00 == -m11 && m01 == -(m10 * f)) {
        NormalizerPart r = canonical(m00, m10);
        r.kind = NormalizerPart::Kind::Odd;
        return r;
    }
    return NormalizerPart{};
}

/// Fixed locus of sigma_f on C x P^1: two sections when f is a square, else
/// the irreducible double cover u^2 = f, ramified over the odd-valuation
/// points of f.
struct FixedLocus {
    enum class Kind { TwoSections, DoubleCover };
    Kind kind;
    std::vector<CurvePoint> ramification; // rational points of odd valuation
};

inline FixedLocus fixed_locus(const FunctionElement& f) {
    const SquareClass cls = is_square_class(f); // ZeroFunction / NonRationalSupport propagate
    if (cls.is_square()) return FixedLocus{FixedLocus::Kind::TwoSections, {}};
    FixedLocus r{FixedLocus::Kind::DoubleCover, {}};
    const Divisor d = divisor_of(f);
    for (const auto& [pt, n] : d.coefficients())
        if (n % 2 != 0) r.ramification.push_back(pt);
    return r;
}

/// Searches the odd normalizer part for tau = [[a, -b f], [b, -a]] with
/// nonsquare det(tau) and det(sigma_f tau), yielding <sigma_f, tau> = (Z/2)^2
/// with all three involutions acting without fixed sections. Candidates are
/// enumerated by total degree of (a, b), then lexicographic coefficients, so
/// the result is deterministic.
namespace detail {

/// Replaces f by f / h^2 where div(h) is the principal part of the rounded
/// half of div(f): the result is in the same square class with a divisor of
/// bounded mass, which keeps the klein search space small. Returns the
/// reduced function and h (h = 1 when no reduction applies).
inline std::pair<FunctionElement, FunctionElement> square_class_reduce(const FunctionElement& f) {
    const EllipticCurve& e = f.curve();
    const Divisor div_f = divisor_of(f);
    Divisor half(e);
    for (const auto& [pt, n] : div_f.coefficients()) {
        const std::int64_t floored = n >= 0 ? n / 2 : -((-n + 1) / 2);
        half.add_point(pt, floored);
    }
    half.add_point(CurvePoint::infinity(), -half.degree());
    const CurvePoint s = group_sum(half);
    if (!s.is_infinity())
        half.add_point(s, -1).add_point(CurvePoint::infinity(), 1);
    if (half.empty()) return {f, FunctionElement::one(e)};
    const FunctionElement h = principality_witness(half);
    return {f / (h * h), h};
}

} // namespace detail

inline PGLMat klein_four_extend(const FunctionElement& f_in, int degree_bound = 6) {
    if (f_in.is_zero()) fail("ZeroFunction", "klein extension of sigma_0 is undefined");
    if (is_square_class(f_in).is_square())
        fail("SquareF", "klein extension requires a nonsquare f");
    const EllipticCurve& e = f_in.curve();
    const std::int64_t p = e.p();

    // search on a small representative of the square class of f; the found
    // tau conjugates back along diag(1, 1/h), which maps sigma_{f/h^2} to
    // sigma_f and preserves every determinant class
    const auto [f, h] = detail::square_class_reduce(f_in);

    // both class conditions are decided on divisors: div(f det tau) =
    // div(f) + div(det tau), so div(f) is computed once up front
    const Divisor div_f = divisor_of(f);
    auto divisor_is_nonsquare = [](const Divisor& d) {
        Divisor half(d.curve());
        for (const auto& [pt, n] : d.coefficients()) {
            if (n % 2 != 0) return true;
            half.add_point(pt, n / 2);
        }
        return !is_principal(half);
    };

    auto polys_of_degree = [&](int deg, bool allow_zero) {
        std::vector<Poly> out;
        if (deg == 0) {
            for (std::int64_t c0 = allow_zero ? 0 : 1; c0 < p; ++c0)
                out.push_back(Poly::constant(p, c0));
            return out;
        }
        std::vector<std::int64_t> coeffs(static_cast<size_t>(deg) + 1, 0);
        std::int64_t count = 1; // p^deg lower coefficient vectors
        for (int i = 0; i < deg; ++i) count *= p;
        // lexicographic over (c0, ..., c_{deg-1}), leading coefficient 1..p-1
        for (std::int64_t lead = 1; lead < p; ++lead) {
            for (std::int64_t idx = 0; idx < count; ++idx) {
                std::int64_t t = idx;
                for (int i = 0; i < deg; ++i) {
                    coeffs[static_cast<size_t>(i)] = t % p;
                    t /= p;
                }
                coeffs[static_cast<size_t>(deg)] = lead;
                out.push_back(Poly::from_coeffs(p, coeffs));
            }
        }
        return out;
    };

    for (int total = 0; total <= 2 * degree_bound; ++total) {
        for (int da = 0; da <= std::min(total, degree_bound); ++da) {
            const int db = total - da;
            if (db > degree_bound) continue;
            const auto as = polys_of_degree(da, da == 0);
            const auto bs = polys_of_degree(db, false);
            for (const auto& a : as) {
                for (const auto& b : bs) {
                    const FunctionElement af = FunctionElement::from_poly(e, a);
                    const FunctionElement bf = FunctionElement::from_poly(e, b);
                    // det(tau) = -(a^2 - b^2 f); zero means tau is singular
                    const FunctionElement dt = bf * bf * f - af * af;
                    if (dt.is_zero()) continue;
                    Divisor div_dt(e);
                    try {
                        div_dt = divisor_of(dt);
                    } catch (const domain_error&) {
                        continue; // irrational support: not certifiable in this model
                    }
                    if (!divisor_is_nonsquare(div_dt)) continue;
                    if (!divisor_is_nonsquare(div_dt + div_f)) continue;
                    const PGLMat tau = PGLMat::odd_normalizer(f, af, bf);
                    if (h.is_constant()) return tau;
                    const PGLMat back =
                        PGLMat::diagonal(FunctionElement::one(e), h.inverse());
                    return pgl_conjugate(back, tau);
                }
            }
        }
    }
    fail("SearchExhausted",
         "no valid tau with coefficient degrees <= " + std::to_string(degree_bound));
}

} // namespace birclass
