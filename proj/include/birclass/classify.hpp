#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "birclass/surface.hpp"

namespace birclass {

enum class MaxClassTag {
    TrivialBundle,
    ExceptionalCB,
    KleinFourCB,
    KleinFourRuled,
    AtiyahA0Max,
    DecomposableDeg0Max,
    NotMaximal,
};

inline std::string max_class_name(MaxClassTag t) {
    switch (t) {
        case MaxClassTag::TrivialBundle: return "TrivialBundle";
        case MaxClassTag::ExceptionalCB: return "ExceptionalCB";
        case MaxClassTag::KleinFourCB: return "KleinFourCB";
        case MaxClassTag::KleinFourRuled: return "KleinFourRuled";
        case MaxClassTag::AtiyahA0Max: return "AtiyahA0Max";
        case MaxClassTag::DecomposableDeg0Max: return "DecomposableDeg0Max";
        case MaxClassTag::NotMaximal: return "NotMaximal";
    }
    return "?";
}

/// Finite subgroup of the base-curve automorphisms (translations and
/// translation-inversions) preserving a point set. Reported, never asserted
/// to lift.
struct BaseStabilizer {
    std::vector<CurvePoint> translations;   // t with B + t = B
    std::vector<CurvePoint> with_inversion; // t with -B + t = B
};

inline BaseStabilizer base_stabilizer(const EllipticCurve& e, const std::set<CurvePoint>& B) {
    BaseStabilizer r;
    if (B.empty()) return r;
    for (const auto& t : enumerate_points(e)) {
        std::set<CurvePoint> tr;
        std::set<CurvePoint> inv_tr;
        for (const auto& q : B) {
            tr.insert(point_add(e, q, t));
            inv_tr.insert(point_add(e, point_neg(e, q), t));
        }
        if (tr == B) r.translations.push_back(t);
        if (inv_tr == B) r.with_inversion.push_back(t);
    }
    return r;
}

/// Classification result: the maximality class plus the witnesses that make
/// it checkable (involution matrices, chain prefixes, stabilizer reports).
struct MaxClass {
    MaxClassTag tag = MaxClassTag::NotMaximal;
    std::vector<std::string> citations;
    std::string note;

    std::optional<AutCGroup> autc;
    std::optional<Divisor> witness_divisor; // ExceptionalCB: div of the swap function
    std::optional<ExceptionalCheck> exceptional;
    std::optional<BaseStabilizer> stabilizer;
    std::vector<SurfaceModel> chain;             // NotMaximal: strictly decreasing Segre
    std::optional<PGLMat> sigma;                 // KleinFourCB
    std::optional<PGLMat> tau;                   // KleinFourCB
};

namespace detail {

inline MaxClass make_class(MaxClassTag tag, std::vector<std::string> citations,
                           std::string note = "") {
    MaxClass r;
    r.tag = tag;
    r.citations = std::move(citations);
    r.note = std::move(note);
    return r;
}

inline MaxClass not_maximal_with_chain(const SurfaceModel& from, const std::string& note) {
    MaxClass r = make_class(MaxClassTag::NotMaximal, {"strictly-increasing-chain"}, note);
    r.chain = elementary_transform_chain(from, {1, 1, 1});
    return r;
}

} // namespace detail

/// Maximality decision for ruled-surface models.
inline MaxClass classify_max(const SurfaceModel& s) {
    switch (s.variant()) {
        case SurfaceVariant::Trivial: {
            MaxClass r = detail::make_class(MaxClassTag::TrivialBundle, {"trivial-bundle"});
            r.autc = aut_c_ruled(s);
            return r;
        }
        case SurfaceVariant::AtiyahA0: {
            MaxClass r = detail::make_class(MaxClassTag::AtiyahA0Max, {"indecomposable-segre-zero"});
            r.autc = aut_c_ruled(s);
            return r;
        }
        case SurfaceVariant::AtiyahA1: {
            MaxClass r = detail::make_class(
                MaxClassTag::KleinFourRuled, {"klein-four-ruled-surface", "indecomposable-segre-one"});
            r.autc = aut_c_ruled(s);
            return r;
        }
        case SurfaceVariant::Decomposable: break;
    }

    const std::int64_t deg = s.deg_d();
    if (deg != 0)
        return detail::not_maximal_with_chain(
            s, "nonzero-degree decomposable model: Segre invariant is negative");

    if (s.concrete() && s.has_divisor()) {
        if (is_principal(s.divisor())) {
            MaxClass r = detail::make_class(MaxClassTag::TrivialBundle, {"trivial-bundle"},
                                             "divisor class is trivial: the bundle is the trivial one");
            r.autc = aut_c_ruled(s);
            return r;
        }
        MaxClass r = detail::make_class(MaxClassTag::DecomposableDeg0Max, {"decomposable-segre-zero"});
        r.autc = aut_c_ruled(s);
        r.citations.push_back(r.autc->kind == AutCKind::GmSemiZ2 ? "two-d-principal"
                                                                 : "two-d-not-principal");
        return r;
    }

    // abstract genus >= 2
    const auto asserted = s.asserted_two_d_principal();
    if (!asserted) fail("MissingAssertion", "genus >= 2 deg-0 model needs the 2D-principality flag");
    if (*asserted) {
        MaxClass r = detail::make_class(MaxClassTag::DecomposableDeg0Max,
                                         {"decomposable-segre-zero", "two-d-principal"},
                                         "asserted: 2D principal");
        r.autc = aut_c_ruled(s);
        return r;
    }
    return detail::not_maximal_with_chain(
        s, "genus >= 2 with 2D not principal: the fibrewise torus escapes along a chain");
}

/// Maximality decision for conic-bundle models.
inline MaxClass classify_max(const ConicBundleModel& cb) {
    if (cb.z_points().empty() && cb.p_points().empty()) return classify_max(cb.base());

    const ExceptionalCheck ex = is_exceptional(cb);
    if (ex.exceptional) {
        SwapInvolution sw = swap_involution(cb);
        if (sw.exists) {
            MaxClass r = detail::make_class(MaxClassTag::ExceptionalCB,
                                             {"exceptional-conic-bundle", "swap-involution"});
            r.exceptional = ex;
            r.autc = AutCGroup{AutCKind::GmSemiZ2, "", sw.f, sw.m};
            r.witness_divisor = divisor_of(*sw.f);
            std::set<CurvePoint> base_pts;
            for (const auto& q : cb.z_points()) base_pts.insert(q);
            for (const auto& q : cb.p_points()) base_pts.insert(q);
            r.stabilizer = base_stabilizer(cb.curve(), base_pts);
            return r;
        }
        // no swap: contract onto the negative-Segre surface and chain away
        Divisor contracted = cb.base().divisor();
        for (const auto& q : cb.z_points()) contracted.add_point(q, 1);
        MaxClass r = detail::not_maximal_with_chain(
            SurfaceModel::decomposable(cb.curve(), contracted),
            "exceptional bundle without a section swap: fibrewise group is the torus only");
        r.exceptional = ex;
        r.autc = AutCGroup{AutCKind::Gm, "", std::nullopt, std::nullopt};
        return r;
    }

    // not exceptional: some section transform is negative, contract there
    Divisor contracted = cb.base().divisor();
    if (ex.s1_sq <= ex.s2_sq) {
        for (const auto& q : cb.z_points()) contracted.add_point(q, 1);
    } else {
        contracted = -contracted;
        for (const auto& q : cb.p_points()) contracted.add_point(q, 1);
    }
    MaxClass r = detail::not_maximal_with_chain(
        SurfaceModel::decomposable(cb.curve(), contracted),
        "non-exceptional bundle: the sections have unequal self-intersections");
    r.exceptional = ex;
    return r;
}

/// Certificate route for Klein-four conic bundles: the group is recognized
/// from two commuting involutions with nonsquare determinants, not discovered
/// from blow-up data.
inline MaxClass classify_klein(const PGLMat& sigma, const PGLMat& tau) {
    const KleinCertificate cert = klein_four_certificate(sigma, tau);
    if (!cert.valid) fail("InvalidModel", "klein certificate rejected: " + cert.reason);
    MaxClass r = detail::make_class(MaxClassTag::KleinFourCB, {"klein-four-conic-bundle"});
    r.sigma = sigma;
    r.tau = tau;
    return r;
}

/// Re-validation of a classification result: every claimed witness must
/// satisfy its defining relations.
inline bool validate_max_class(const MaxClass& r) {
    switch (r.tag) {
        case MaxClassTag::NotMaximal: {
            if (r.chain.size() < 2) return false;
            for (size_t i = 1; i < r.chain.size(); ++i)
                if (segre_invariant(r.chain[i]) >= segre_invariant(r.chain[i - 1])) return false;
            return true;
        }
        case MaxClassTag::ExceptionalCB: {
            if (!r.autc || r.autc->kind != AutCKind::GmSemiZ2) return false;
            if (!r.autc->involution || !r.autc->beta || !r.witness_divisor) return false;
            if (!is_involution(*r.autc->involution)) return false;
            if (det_class(*r.autc->involution).is_square()) return false;
            return divisor_of(*r.autc->beta) == *r.witness_divisor;
        }
        case MaxClassTag::KleinFourCB:
            return r.sigma && r.tau && klein_four_certificate(*r.sigma, *r.tau).valid;
        case MaxClassTag::DecomposableDeg0Max: {
            if (!r.autc) return false;
            if (r.autc->kind == AutCKind::GmSemiZ2 && r.autc->involution)
                return is_involution(*r.autc->involution);
            return r.autc->kind == AutCKind::Gm || r.autc->kind == AutCKind::GmSemiZ2;
        }
        case MaxClassTag::TrivialBundle:
        case MaxClassTag::KleinFourRuled:
        case MaxClassTag::AtiyahA0Max:
            return true;
    }
    return false;
}

} // namespace birclass
