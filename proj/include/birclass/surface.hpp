#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "birclass/pgl2.hpp"

namespace birclass {

/// Numerical class a*sigma + b*fibre in Num(S) of a ruled surface, in the
/// basis of a fixed section with sigma^2 = e and a fibre.
struct NumClass {
    std::int64_t e; // self-intersection of the reference section
    std::int64_t a;
    std::int64_t b;
};

/// Intersection pairing: sigma^2 = e, sigma.f = 1, f^2 = 0.
inline std::int64_t num_intersect(const NumClass& c1, const NumClass& c2) {
    if (c1.e != c2.e) fail("ContextMismatch", "classes in different intersection lattices");
    return c1.a * c2.a * c1.e + c1.a * c2.b + c2.a * c1.b;
}

enum class SurfaceVariant { Trivial, Decomposable, AtiyahA0, AtiyahA1 };

inline std::string variant_name(SurfaceVariant v) {
    switch (v) {
        case SurfaceVariant::Trivial: return "trivial";
        case SurfaceVariant::Decomposable: return "decomposable";
        case SurfaceVariant::AtiyahA0: return "atiyah_a0";
        case SurfaceVariant::AtiyahA1: return "atiyah_a1";
    }
    return "?";
}

/// Symbolic model of a ruled surface over the base curve: the trivial bundle,
/// a decomposable bundle P(O(D) + O), or one of the two indecomposable
/// bundles over an elliptic base. Genus >= 2 is supported in an abstract mode
/// that carries deg(D) and user-asserted principality flags instead of a
/// concrete divisor.
class SurfaceModel {
public:
    static SurfaceModel trivial(const EllipticCurve& e) {
        SurfaceModel s(SurfaceVariant::Trivial, 1);
        s.curve_ = e;
        return s;
    }
    static SurfaceModel decomposable(const EllipticCurve& e, const Divisor& d) {
        SurfaceModel s(SurfaceVariant::Decomposable, 1);
        s.curve_ = e;
        s.d_ = d;
        return s;
    }
    static SurfaceModel atiyah_a0(const EllipticCurve& e) {
        SurfaceModel s(SurfaceVariant::AtiyahA0, 1);
        s.curve_ = e;
        return s;
    }
    static SurfaceModel atiyah_a1(const EllipticCurve& e) {
        SurfaceModel s(SurfaceVariant::AtiyahA1, 1);
        s.curve_ = e;
        return s;
    }
    static SurfaceModel trivial_abstract(int genus) {
        require_higher_genus(genus);
        return SurfaceModel(SurfaceVariant::Trivial, genus);
    }
    static SurfaceModel decomposable_abstract(int genus, std::int64_t deg_d,
                                              std::optional<bool> two_d_principal) {
        require_higher_genus(genus);
        SurfaceModel s(SurfaceVariant::Decomposable, genus);
        s.abstract_deg_ = deg_d;
        s.two_d_principal_ = two_d_principal;
        return s;
    }

    SurfaceVariant variant() const { return variant_; }
    int genus() const { return genus_; }
    bool concrete() const { return curve_.has_value(); }
    const EllipticCurve& curve() const {
        if (!curve_) fail("AbstractModeMissingData", "model carries no concrete curve");
        return *curve_;
    }
    const Divisor& divisor() const {
        if (!d_) fail("AbstractModeMissingData", "model carries no concrete divisor");
        return *d_;
    }
    bool has_divisor() const { return d_.has_value(); }
    std::optional<bool> asserted_two_d_principal() const { return two_d_principal_; }
    std::optional<std::int64_t> abstract_deg() const { return abstract_deg_; }

    std::int64_t deg_d() const {
        if (d_) return d_->degree();
        if (abstract_deg_) return *abstract_deg_;
        fail("AbstractModeMissingData", "decomposable model without divisor data");
    }

private:
    SurfaceModel(SurfaceVariant v, int genus) : variant_(v), genus_(genus) {
        if (genus < 1) fail("InvalidModel", "genus must be positive");
        if ((v == SurfaceVariant::AtiyahA0 || v == SurfaceVariant::AtiyahA1) && genus != 1)
            fail("InvalidModel", "indecomposable models of this kind require genus 1");
    }
    static void require_higher_genus(int genus) {
        if (genus < 2) fail("InvalidModel", "abstract mode is for genus >= 2");
    }

    SurfaceVariant variant_;
    int genus_;
    std::optional<EllipticCurve> curve_;
    std::optional<Divisor> d_;
    std::optional<std::int64_t> abstract_deg_;
    std::optional<bool> two_d_principal_;
};

/// Minimal self-intersection of a section: 0 for the trivial bundle and the
/// Segre-zero indecomposable, -|deg D| for P(O(D) + O), 1 for the positive
/// indecomposable over an elliptic base.
inline std::int64_t segre_invariant(const SurfaceModel& s) {
    switch (s.variant()) {
        case SurfaceVariant::Trivial: return 0;
        case SurfaceVariant::AtiyahA0: return 0;
        case SurfaceVariant::AtiyahA1: return 1;
        case SurfaceVariant::Decomposable: {
            const std::int64_t d = s.deg_d();
            return d < 0 ? d : -d;
        }
    }
    fail("InvalidModel", "unknown surface variant");
}

enum class AutCKind { FullPGL2k, Gm, GmSemiZ2, KleinFour, Ga, Trivial, Z2 };

inline std::string autc_kind_name(AutCKind k) {
    switch (k) {
        case AutCKind::FullPGL2k: return "FullPGL2k";
        case AutCKind::Gm: return "Gm";
        case AutCKind::GmSemiZ2: return "GmSemiZ2";
        case AutCKind::KleinFour: return "KleinFour";
        case AutCKind::Ga: return "Ga";
        case AutCKind::Trivial: return "Trivial";
        case AutCKind::Z2: return "Z2";
    }
    return "?";
}

/// Fibrewise automorphism group with optional involution witnesses.
struct AutCGroup {
    AutCKind kind;
    std::string note;
    std::optional<FunctionElement> beta;  // GmSemiZ2: div(beta) = 2D (or the swap function)
    std::optional<PGLMat> involution;     // GmSemiZ2: [[0, beta], [1, 0]]
};

/// Fibrewise automorphism group of a ruled-surface model. Witnesses are
/// concrete in genus 1; abstract models evaluate the decision rules on the
/// asserted flags.
inline AutCGroup aut_c_ruled(const SurfaceModel& s) {
    switch (s.variant()) {
        case SurfaceVariant::Trivial:
            return AutCGroup{AutCKind::FullPGL2k, "", std::nullopt, std::nullopt};
        case SurfaceVariant::AtiyahA1:
            return AutCGroup{AutCKind::KleinFour, "symbolic: indecomposable of positive Segre invariant",
                             std::nullopt, std::nullopt};
        case SurfaceVariant::AtiyahA0:
            return AutCGroup{AutCKind::Ga, "symbolic: indecomposable of Segre invariant zero",
                             std::nullopt, std::nullopt};
        case SurfaceVariant::Decomposable: break;
    }
    const std::int64_t deg = s.deg_d();
    if (deg != 0)
        return AutCGroup{AutCKind::Gm,
                         "uncertified: fibrewise group of a nonzero-degree decomposable model "
                         "is reported as its torus part only",
                         std::nullopt, std::nullopt};
    if (s.concrete() && s.has_divisor()) {
        const Divisor& d = s.divisor();
        if (is_principal(d))
            return AutCGroup{AutCKind::FullPGL2k, "divisor class is trivial: the bundle is trivial",
                             std::nullopt, std::nullopt};
        const Divisor two_d = d + d;
        if (!is_principal(two_d))
            return AutCGroup{AutCKind::Gm, "", std::nullopt, std::nullopt};
        FunctionElement beta = principality_witness(two_d);
        PGLMat inv = PGLMat::sigma(beta);
        return AutCGroup{AutCKind::GmSemiZ2, "", beta, inv};
    }
    // abstract mode
    const auto asserted = s.asserted_two_d_principal();
    if (!asserted)
        fail("AbstractModeMissingData", "deg 0 abstract model needs the 2D-principality flag");
    if (*asserted)
        return AutCGroup{AutCKind::GmSemiZ2, "asserted: 2D principal", std::nullopt, std::nullopt};
    return AutCGroup{AutCKind::Gm, "asserted: 2D not principal", std::nullopt, std::nullopt};
}

/// One elementary-transformation step per orbit: blow up k fresh base points
/// on the minimal section and contract the fibre transforms, which adds the
/// points to D and drops the Segre invariant by k. Fresh points are taken in
/// canonical order, avoiding the current support.
inline std::vector<SurfaceModel> elementary_transform_chain(const SurfaceModel& start,
                                                            const std::vector<std::int64_t>& orbit_sizes) {
    if (start.variant() != SurfaceVariant::Trivial && start.variant() != SurfaceVariant::Decomposable)
        fail("InvalidModel", "chains start from trivial or decomposable models");
    for (std::int64_t k : orbit_sizes)
        if (k < 1) fail("InvalidModel", "orbit sizes must be positive");

    std::vector<SurfaceModel> out;
    if (!start.concrete()) {
        std::int64_t deg = start.variant() == SurfaceVariant::Trivial ? 0 : start.deg_d();
        if (deg < 0) deg = -deg;
        auto flag = start.variant() == SurfaceVariant::Decomposable ? start.asserted_two_d_principal()
                                                                    : std::optional<bool>{};
        out.push_back(start);
        for (std::int64_t k : orbit_sizes) {
            deg += k;
            out.push_back(SurfaceModel::decomposable_abstract(start.genus(), deg, flag));
        }
        return out;
    }

    const EllipticCurve& e = start.curve();
    Divisor d = start.variant() == SurfaceVariant::Trivial ? Divisor(e) : start.divisor();
    if (d.degree() < 0) d = -d; // P(O(D)+O) and P(O(-D)+O) are the same model
    const auto all = enumerate_points(e);
    std::set<CurvePoint> used;
    for (const auto& [pt, n] : d.coefficients()) used.insert(pt);

    out.push_back(start.variant() == SurfaceVariant::Trivial ? SurfaceModel::decomposable(e, d)
                                                             : start);
    for (std::int64_t k : orbit_sizes) {
        for (std::int64_t i = 0; i < k; ++i) {
            auto it = std::find_if(all.begin(), all.end(), [&](const CurvePoint& q) {
                return !q.is_infinity() && !used.count(q);
            });
            if (it == all.end())
                fail("PointExhaustion", "curve has too few rational points for the requested chain");
            used.insert(*it);
            d.add_point(*it, 1);
        }
        out.push_back(SurfaceModel::decomposable(e, d));
    }
    return out;
}

/// Conic bundle: a decomposable base P(O(D) + O) blown up in Z on the
/// O(D)-section and P on the O-section, with all base points in distinct
/// fibres.
class ConicBundleModel {
public:
    ConicBundleModel(SurfaceModel base, std::vector<CurvePoint> z, std::vector<CurvePoint> p)
        : base_(std::move(base)), z_(std::move(z)), p_(std::move(p)) {
        if (base_.variant() != SurfaceVariant::Decomposable && base_.variant() != SurfaceVariant::Trivial)
            fail("InvalidModel", "conic bundle base must be decomposable (or trivial)");
        if (base_.variant() == SurfaceVariant::Trivial)
            base_ = SurfaceModel::decomposable(base_.curve(), Divisor(base_.curve()));
        if (!base_.concrete())
            fail("AbstractModeMissingData", "conic bundle models require a concrete genus-1 base");
        std::sort(z_.begin(), z_.end());
        std::sort(p_.begin(), p_.end());
        std::set<CurvePoint> seen;
        for (const auto& q : z_) check_point(q, seen);
        for (const auto& q : p_) check_point(q, seen);
    }

    const SurfaceModel& base() const { return base_; }
    const EllipticCurve& curve() const { return base_.curve(); }
    const std::vector<CurvePoint>& z_points() const { return z_; }
    const std::vector<CurvePoint>& p_points() const { return p_; }

    std::int64_t singular_fibres() const {
        return static_cast<std::int64_t>(z_.size() + p_.size());
    }

private:
    void check_point(const CurvePoint& q, std::set<CurvePoint>& seen) {
        require_on_curve(base_.curve(), q);
        if (!seen.insert(q).second)
            fail("InvalidModel", "blow-up points must lie in pairwise distinct fibres: " + q.str());
    }

    SurfaceModel base_;
    std::vector<CurvePoint> z_;
    std::vector<CurvePoint> p_;
};

/// Self-intersections of the two section transforms: s1 carries O(D) and
/// loses |Z|, s2 carries O and loses |P|.
struct ExceptionalCheck {
    bool exceptional = false;
    std::int64_t n = 0;
    std::int64_t s1_sq = 0;
    std::int64_t s2_sq = 0;
};

inline ExceptionalCheck is_exceptional(const ConicBundleModel& cb) {
    const std::int64_t d = cb.base().deg_d();
    ExceptionalCheck r;
    r.s1_sq = -d - static_cast<std::int64_t>(cb.z_points().size());
    r.s2_sq = d - static_cast<std::int64_t>(cb.p_points().size());
    if (r.s1_sq == r.s2_sq && r.s1_sq < 0) {
        r.n = -r.s1_sq;
        r.exceptional = cb.singular_fibres() == 2 * r.n;
    }
    return r;
}

/// Involution permuting the two sections, when -2D is linearly equivalent to
/// sum(Z) - sum(P): f realizes div(f) = sum(Z) - sum(P) + 2D and the matrix
/// [[0, f], [1, 0]] is the swap.
struct SwapInvolution {
    bool exists = false;
    std::optional<FunctionElement> f;
    std::optional<PGLMat> m;
    Divisor target; // sum(Z) - sum(P) + 2D

    explicit SwapInvolution(const EllipticCurve& e) : target(e) {}
};

inline SwapInvolution swap_involution(const ConicBundleModel& cb) {
    const EllipticCurve& e = cb.curve();
    SwapInvolution r(e);
    Divisor target(e);
    for (const auto& q : cb.z_points()) target.add_point(q, 1);
    for (const auto& q : cb.p_points()) target.add_point(q, -1);
    const Divisor& d = cb.base().divisor();
    target = target + d + d;
    r.target = target;
    if (!is_principal(target)) return r;
    r.exists = true;
    FunctionElement f = principality_witness(target);
    r.m = PGLMat::sigma(f);
    r.f = std::move(f);
    return r;
}

/// Fibrewise automorphism group of an exceptional conic bundle: the torus,
/// extended by the section swap when it exists.
inline AutCGroup aut_c_conic(const ConicBundleModel& cb) {
    if (!is_exceptional(cb).exceptional)
        fail("NotExceptionalInput", "fibrewise group is computed for exceptional bundles only");
    SwapInvolution sw = swap_involution(cb);
    if (!sw.exists) return AutCGroup{AutCKind::Gm, "", std::nullopt, std::nullopt};
    return AutCGroup{AutCKind::GmSemiZ2, "", sw.f, sw.m};
}

/// Certificate that <sigma, tau> is a Klein four-group all of whose nontrivial
/// elements fix an irreducible double cover of the base.
struct KleinCertificate {
    bool valid = false;
    std::string reason;
};

inline KleinCertificate klein_four_certificate(const PGLMat& sigma, const PGLMat& tau) {
    if (sigma.curve() != tau.curve()) return {false, "matrices over different curves"};
    if (sigma.is_identity() || tau.is_identity()) return {false, "identity element"};
    if (sigma == tau) return {false, "equal involutions"};
    if (!pgl_mul(sigma, sigma).is_identity()) return {false, "sigma is not an involution"};
    if (!pgl_mul(tau, tau).is_identity()) return {false, "tau is not an involution"};
    if (pgl_mul(sigma, tau) != pgl_mul(tau, sigma)) return {false, "involutions do not commute"};
    const PGLMat prod = pgl_mul(sigma, tau);
    try {
        if (det_class(sigma).is_square()) return {false, "det(sigma) is a square"};
        if (det_class(tau).is_square()) return {false, "det(tau) is a square"};
        if (det_class(prod).is_square()) return {false, "det(sigma tau) is a square"};
    } catch (const domain_error& err) {
        return {false, std::string("determinant class undecidable: ") + err.what()};
    }
    return {true, ""};
}

} // namespace birclass
