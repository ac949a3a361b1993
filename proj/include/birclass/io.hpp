#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "birclass/classify.hpp"

namespace birclass {

// nlohmann::json with the default (sorted-key) object representation, so every
// report is a deterministic byte stream.
using json = nlohmann::json;

inline json curve_to_json(const EllipticCurve& e) {
    return json{{"p", e.p()}, {"a", e.a()}, {"b", e.b()}};
}

inline EllipticCurve curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("a") || !j.contains("b"))
        fail("ParseError", "curve needs fields p, a, b");
    return EllipticCurve(j.at("p").get<std::int64_t>(), j.at("a").get<std::int64_t>(),
                         j.at("b").get<std::int64_t>());
}

inline json point_to_json(const CurvePoint& q) {
    if (q.is_infinity()) return json("O");
    return json{{"x", q.x()}, {"y", q.y()}};
}

inline CurvePoint point_from_json(const json& j, const EllipticCurve& e) {
    if (j.is_string()) {
        if (j.get<std::string>() == "O") return CurvePoint::infinity();
        fail("ParseError", "point string must be \"O\"");
    }
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        fail("ParseError", "point needs fields x, y or the string \"O\"");
    CurvePoint q = CurvePoint::affine(j.at("x").get<std::int64_t>(), j.at("y").get<std::int64_t>(), e.p());
    require_on_curve(e, q);
    return q;
}

inline json divisor_to_json(const Divisor& d) {
    json arr = json::array();
    for (const auto& [pt, n] : d.coefficients())
        arr.push_back(json{{"point", point_to_json(pt)}, {"coefficient", n}});
    return arr;
}

inline Divisor divisor_from_json(const json& j, const EllipticCurve& e) {
    if (!j.is_array()) fail("ParseError", "divisor must be an array of {point, coefficient}");
    Divisor d(e);
    for (const auto& item : j) {
        if (!item.contains("point") || !item.contains("coefficient"))
            fail("ParseError", "divisor entry needs point and coefficient");
        d.add_point(point_from_json(item.at("point"), e), item.at("coefficient").get<std::int64_t>());
    }
    return d;
}

inline json function_to_json(const FunctionElement& f) {
    return json{{"a", f.num_a().coeffs()}, {"b", f.num_b().coeffs()}, {"c", f.den().coeffs()}};
}

inline FunctionElement function_from_json(const json& j, const EllipticCurve& e) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        fail("ParseError", "function needs coefficient arrays a, b, c");
    auto poly = [&](const json& arr) {
        return Poly::from_coeffs(e.p(), arr.get<std::vector<std::int64_t>>());
    };
    return FunctionElement(e, poly(j.at("a")), poly(j.at("b")), poly(j.at("c")));
}

inline json matrix_to_json(const PGLMat& m) {
    return json::array({json::array({function_to_json(m.entry(0, 0)), function_to_json(m.entry(0, 1))}),
                        json::array({function_to_json(m.entry(1, 0)), function_to_json(m.entry(1, 1))})});
}

inline PGLMat matrix_from_json(const json& j, const EllipticCurve& e) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        fail("ParseError", "matrix must be a 2x2 array of function elements");
    return PGLMat(e, function_from_json(j[0][0], e), function_from_json(j[0][1], e),
                  function_from_json(j[1][0], e), function_from_json(j[1][1], e));
}

inline json square_class_to_json(const SquareClass& c) {
    json j{{"verdict", c.is_square() ? "Square" : "NonSquare"}};
    if (c.half) j["half"] = divisor_to_json(*c.half);
    if (c.odd_point) j["odd_point"] = point_to_json(*c.odd_point);
    return j;
}

inline json fixed_locus_to_json(const FixedLocus& fl) {
    if (fl.kind == FixedLocus::Kind::TwoSections) return json{{"kind", "TwoSections"}};
    json ram = json::array();
    for (const auto& q : fl.ramification) ram.push_back(point_to_json(q));
    return json{{"kind", "DoubleCover"}, {"ramification", ram}};
}

inline json autc_to_json(const AutCGroup& g) {
    json j{{"kind", autc_kind_name(g.kind)}};
    if (!g.note.empty()) j["note"] = g.note;
    if (g.beta) j["beta"] = function_to_json(*g.beta);
    if (g.involution) j["involution"] = matrix_to_json(*g.involution);
    return j;
}

// ---------------------------------------------------------------------------
// model input: ruled-surface models, conic bundles, and klein-certified pairs
// ---------------------------------------------------------------------------

struct ModelInput {
    enum class Kind { Surface, ConicBundle, KleinCertified };
    Kind kind;
    std::optional<SurfaceModel> surface;
    std::optional<ConicBundleModel> bundle;
    std::optional<PGLMat> sigma;
    std::optional<PGLMat> tau;
};

inline json surface_to_json(const SurfaceModel& s) {
    json j{{"variant", variant_name(s.variant())}, {"genus", s.genus()}};
    if (s.concrete()) j["curve"] = curve_to_json(s.curve());
    if (s.has_divisor()) j["D"] = divisor_to_json(s.divisor());
    if (s.abstract_deg()) j["deg_d"] = *s.abstract_deg();
    if (s.asserted_two_d_principal())
        j["asserted"] = json{{"two_d_principal", *s.asserted_two_d_principal()}};
    return j;
}

inline json model_to_json(const ModelInput& m) {
    switch (m.kind) {
        case ModelInput::Kind::Surface: return surface_to_json(*m.surface);
        case ModelInput::Kind::ConicBundle: {
            const ConicBundleModel& cb = *m.bundle;
            json j{{"variant", "conic_bundle"},
                   {"genus", 1},
                   {"curve", curve_to_json(cb.curve())},
                   {"D", divisor_to_json(cb.base().divisor())}};
            json z = json::array(), p = json::array();
            for (const auto& q : cb.z_points()) z.push_back(point_to_json(q));
            for (const auto& q : cb.p_points()) p.push_back(point_to_json(q));
            j["Z"] = z;
            j["P"] = p;
            return j;
        }
        case ModelInput::Kind::KleinCertified: {
            return json{{"variant", "klein_certified"},
                        {"curve", curve_to_json(m.sigma->curve())},
                        {"sigma", matrix_to_json(*m.sigma)},
                        {"tau", matrix_to_json(*m.tau)}};
        }
    }
    fail("InvalidModel", "unknown model kind");
}

inline ModelInput model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant")) fail("ParseError", "model needs a variant field");
    const std::string variant = j.at("variant").get<std::string>();
    const int genus = j.value("genus", 1);

    if (variant == "klein_certified") {
        const EllipticCurve e = curve_from_json(j.at("curve"));
        ModelInput m{ModelInput::Kind::KleinCertified, {}, {}, {}, {}};
        m.sigma = matrix_from_json(j.at("sigma"), e);
        m.tau = matrix_from_json(j.at("tau"), e);
        return m;
    }
    if (variant == "conic_bundle") {
        const EllipticCurve e = curve_from_json(j.at("curve"));
        const Divisor d = divisor_from_json(j.value("D", json::array()), e);
        std::vector<CurvePoint> z, p;
        for (const auto& q : j.value("Z", json::array())) z.push_back(point_from_json(q, e));
        for (const auto& q : j.value("P", json::array())) p.push_back(point_from_json(q, e));
        ModelInput m{ModelInput::Kind::ConicBundle, {}, {}, {}, {}};
        m.bundle = ConicBundleModel(SurfaceModel::decomposable(e, d), std::move(z), std::move(p));
        return m;
    }

    ModelInput m{ModelInput::Kind::Surface, {}, {}, {}, {}};
    if (genus == 1) {
        const EllipticCurve e = curve_from_json(j.at("curve"));
        if (variant == "trivial") m.surface = SurfaceModel::trivial(e);
        else if (variant == "atiyah_a0") m.surface = SurfaceModel::atiyah_a0(e);
        else if (variant == "atiyah_a1") m.surface = SurfaceModel::atiyah_a1(e);
        else if (variant == "decomposable")
            m.surface = SurfaceModel::decomposable(e, divisor_from_json(j.value("D", json::array()), e));
        else fail("ParseError", "unknown variant " + variant);
        return m;
    }
    // abstract genus >= 2
    std::optional<bool> flag;
    if (j.contains("asserted") && j.at("asserted").contains("two_d_principal"))
        flag = j.at("asserted").at("two_d_principal").get<bool>();
    if (variant == "trivial") m.surface = SurfaceModel::trivial_abstract(genus);
    else if (variant == "decomposable")
        m.surface = SurfaceModel::decomposable_abstract(genus, j.value("deg_d", std::int64_t{0}), flag);
    else fail("ParseError", "variant " + variant + " has no abstract mode");
    return m;
}

inline MaxClass classify_input(const ModelInput& m) {
    switch (m.kind) {
        case ModelInput::Kind::Surface: return classify_max(*m.surface);
        case ModelInput::Kind::ConicBundle: return classify_max(*m.bundle);
        case ModelInput::Kind::KleinCertified: return classify_klein(*m.sigma, *m.tau);
    }
    fail("InvalidModel", "unknown model kind");
}

// ---------------------------------------------------------------------------
// classification reports
// ---------------------------------------------------------------------------

inline json stabilizer_to_json(const BaseStabilizer& st) {
    json tr = json::array(), inv = json::array();
    for (const auto& q : st.translations) tr.push_back(point_to_json(q));
    for (const auto& q : st.with_inversion) inv.push_back(point_to_json(q));
    return json{{"translations", tr}, {"with_inversion", inv}};
}

inline json classification_to_json(const MaxClass& r) {
    json w = json::object();
    if (r.autc) w["autc"] = autc_to_json(*r.autc);
    if (r.exceptional)
        w["exceptional"] = json{{"n", r.exceptional->n},
                                {"s1_sq", r.exceptional->s1_sq},
                                {"s2_sq", r.exceptional->s2_sq},
                                {"is_exceptional", r.exceptional->exceptional}};
    if (r.witness_divisor) w["witness_divisor"] = divisor_to_json(*r.witness_divisor);
    if (r.stabilizer) w["base_stabilizer"] = stabilizer_to_json(*r.stabilizer);
    if (!r.chain.empty()) {
        json chain = json::array();
        for (const auto& s : r.chain)
            chain.push_back(json{{"model", surface_to_json(s)}, {"segre", segre_invariant(s)}});
        w["chain"] = chain;
    }
    if (r.sigma) w["sigma"] = matrix_to_json(*r.sigma);
    if (r.tau) w["tau"] = matrix_to_json(*r.tau);
    json out{{"class", max_class_name(r.tag)}, {"witness", w}, {"citations", r.citations}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

inline AutCGroup autc_from_json(const json& j, const EllipticCurve& e) {
    AutCGroup g{AutCKind::Trivial, "", std::nullopt, std::nullopt};
    const std::string kind = j.at("kind").get<std::string>();
    bool found = false;
    for (AutCKind k : {AutCKind::FullPGL2k, AutCKind::Gm, AutCKind::GmSemiZ2, AutCKind::KleinFour,
                       AutCKind::Ga, AutCKind::Trivial, AutCKind::Z2}) {
        if (autc_kind_name(k) == kind) {
            g.kind = k;
            found = true;
        }
    }
    if (!found) fail("ParseError", "unknown fibrewise group kind " + kind);
    g.note = j.value("note", "");
    if (j.contains("beta")) g.beta = function_from_json(j.at("beta"), e);
    if (j.contains("involution")) g.involution = matrix_from_json(j.at("involution"), e);
    return g;
}

inline SurfaceModel surface_from_json(const json& j) {
    const ModelInput m = model_from_json(j);
    if (m.kind != ModelInput::Kind::Surface) fail("ParseError", "expected a surface model");
    return *m.surface;
}

/// Inverse of classification_to_json. Reports with concrete function or
/// divisor witnesses need the curve they live on; chain models carry their
/// own curves.
inline MaxClass classification_from_json(const json& j, const std::optional<EllipticCurve>& e) {
    MaxClass r;
    const std::string tag = j.at("class").get<std::string>();
    bool found = false;
    for (MaxClassTag t : {MaxClassTag::TrivialBundle, MaxClassTag::ExceptionalCB,
                          MaxClassTag::KleinFourCB, MaxClassTag::KleinFourRuled,
                          MaxClassTag::AtiyahA0Max, MaxClassTag::DecomposableDeg0Max,
                          MaxClassTag::NotMaximal}) {
        if (max_class_name(t) == tag) {
            r.tag = t;
            found = true;
        }
    }
    if (!found) fail("ParseError", "unknown class " + tag);
    r.citations = j.at("citations").get<std::vector<std::string>>();
    r.note = j.value("note", "");
    const json& w = j.at("witness");
    auto need_curve = [&]() -> const EllipticCurve& {
        if (!e) fail("ParseError", "report has concrete witnesses: a curve is required");
        return *e;
    };
    if (w.contains("autc")) r.autc = autc_from_json(w.at("autc"), need_curve());
    if (w.contains("witness_divisor"))
        r.witness_divisor = divisor_from_json(w.at("witness_divisor"), need_curve());
    if (w.contains("exceptional")) {
        ExceptionalCheck ex;
        ex.exceptional = w.at("exceptional").at("is_exceptional").get<bool>();
        ex.n = w.at("exceptional").at("n").get<std::int64_t>();
        ex.s1_sq = w.at("exceptional").at("s1_sq").get<std::int64_t>();
        ex.s2_sq = w.at("exceptional").at("s2_sq").get<std::int64_t>();
        r.exceptional = ex;
    }
    if (w.contains("base_stabilizer")) {
        BaseStabilizer st;
        for (const auto& q : w.at("base_stabilizer").at("translations"))
            st.translations.push_back(point_from_json(q, need_curve()));
        for (const auto& q : w.at("base_stabilizer").at("with_inversion"))
            st.with_inversion.push_back(point_from_json(q, need_curve()));
        r.stabilizer = st;
    }
    if (w.contains("chain"))
        for (const auto& step : w.at("chain")) r.chain.push_back(surface_from_json(step.at("model")));
    if (w.contains("sigma")) r.sigma = matrix_from_json(w.at("sigma"), need_curve());
    if (w.contains("tau")) r.tau = matrix_from_json(w.at("tau"), need_curve());
    return r;
}

inline std::string autc_human(const AutCGroup& g) {
    switch (g.kind) {
        case AutCKind::FullPGL2k: return "PGL(2,k)";
        case AutCKind::Gm: return "Gm";
        case AutCKind::GmSemiZ2: return "Gm\xE2\x8B\x8AZ/2"; // Gm⋊Z/2
        case AutCKind::KleinFour: return "(Z/2)^2";
        case AutCKind::Ga: return "Ga";
        case AutCKind::Trivial: return "1";
        case AutCKind::Z2: return "Z/2";
    }
    return "?";
}

} // namespace birclass
