// Command-line surface over the library: curve/divisor/function-field
// arithmetic, the involution algebra, bundle classification, and a one-shot
// reproduction of the 4-torsion exceptional bundle.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "birclass/io.hpp"

namespace {

using namespace birclass;

struct Options {
    std::int64_t p = 5;
    std::int64_t a = -1;
    std::int64_t b = 0;
    bool json_out = false;
    std::uint64_t seed = 0; // reserved for sampling commands
    int degree_bound = 6;
    std::string in_file;
};

json read_payload(const Options& opt) {
    std::string text;
    if (!opt.in_file.empty()) {
        std::ifstream in(opt.in_file);
        if (!in) fail("ParseError", "cannot open " + opt.in_file);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail("ParseError", std::string("invalid JSON payload: ") + e.what());
    }
}

void emit(const Options& opt, const json& report, const std::string& text) {
    if (opt.json_out)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

EllipticCurve curve_of(const Options& opt) { return EllipticCurve(opt.p, opt.a, opt.b); }

std::string points_line(const std::vector<CurvePoint>& pts) {
    std::string s;
    for (const auto& q : pts) {
        if (!s.empty()) s += " ";
        s += q.str();
    }
    return s;
}

// --- curve -----------------------------------------------------------------

void cmd_curve_info(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const auto pts = enumerate_points(e);
    json rep{{"curve", curve_to_json(e)}, {"point_count", pts.size()}};
    emit(opt, rep,
         e.str() + "\npoints: " + std::to_string(pts.size()) + "\n");
}

void cmd_curve_points(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const auto pts = enumerate_points(e);
    json arr = json::array();
    for (const auto& q : pts) arr.push_back(point_to_json(q));
    emit(opt, json{{"curve", curve_to_json(e)}, {"points", arr}}, points_line(pts) + "\n");
}

void cmd_curve_torsion(const Options& opt, std::int64_t n) {
    const EllipticCurve e = curve_of(opt);
    const auto q = find_torsion(e, n);
    json rep{{"curve", curve_to_json(e)}, {"n", n}};
    rep["point"] = q ? point_to_json(*q) : json(nullptr);
    emit(opt, rep, q ? q->str() + "\n" : "NotFound\n");
}

// --- divisor ---------------------------------------------------------------

Divisor payload_divisor(const json& j, const EllipticCurve& e) {
    if (j.is_array()) return divisor_from_json(j, e);
    if (j.is_object() && j.contains("divisor")) return divisor_from_json(j.at("divisor"), e);
    fail("ParseError", "expected a divisor array or {\"divisor\": [...]}");
}

void cmd_divisor_sum(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const Divisor d = payload_divisor(read_payload(opt), e);
    const CurvePoint s = group_sum(d);
    emit(opt, json{{"sum", point_to_json(s)}, {"degree", d.degree()}},
         "degree " + std::to_string(d.degree()) + ", group-sum " + s.str() + "\n");
}

void cmd_divisor_principal(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const Divisor d = payload_divisor(read_payload(opt), e);
    const bool ok = is_principal(d);
    emit(opt, json{{"principal", ok}}, ok ? "true\n" : "false\n");
}

void cmd_divisor_lineq(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.is_object() || !j.contains("d1") || !j.contains("d2"))
        fail("ParseError", "expected {\"d1\": [...], \"d2\": [...]}");
    const bool ok = is_linearly_equivalent(divisor_from_json(j.at("d1"), e),
                                           divisor_from_json(j.at("d2"), e));
    emit(opt, json{{"linearly_equivalent", ok}}, ok ? "true\n" : "false\n");
}

void cmd_divisor_witness(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const Divisor d = payload_divisor(read_payload(opt), e);
    const FunctionElement f = principality_witness(d);
    emit(opt, json{{"witness", function_to_json(f)}, {"divisor", divisor_to_json(divisor_of(f))}},
         f.str() + "\n");
}

void cmd_divisor_translate(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.is_object() || !j.contains("divisor") || !j.contains("t"))
        fail("ParseError", "expected {\"divisor\": [...], \"t\": point}");
    const Divisor r =
        translate_divisor(divisor_from_json(j.at("divisor"), e), point_from_json(j.at("t"), e));
    emit(opt, json{{"divisor", divisor_to_json(r)}}, r.str() + "\n");
}

// --- func ------------------------------------------------------------------

FunctionElement payload_function(const json& j, const EllipticCurve& e) {
    if (j.is_object() && j.contains("f")) return function_from_json(j.at("f"), e);
    return function_from_json(j, e);
}

void cmd_func_eval(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.contains("point")) fail("ParseError", "expected {\"f\": ..., \"point\": ...}");
    const FunctionElement f = payload_function(j, e);
    const CurvePoint P = point_from_json(j.at("point"), e);
    const std::int64_t v = eval_at(f, P);
    emit(opt, json{{"value", v}}, std::to_string(v) + "\n");
}

void cmd_func_valuation(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.contains("point")) fail("ParseError", "expected {\"f\": ..., \"point\": ...}");
    const FunctionElement f = payload_function(j, e);
    const CurvePoint P = point_from_json(j.at("point"), e);
    const std::int64_t v = valuation_at(f, P);
    emit(opt, json{{"valuation", v}}, std::to_string(v) + "\n");
}

void cmd_func_divisor(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const FunctionElement f = payload_function(read_payload(opt), e);
    const Divisor d = divisor_of(f);
    emit(opt, json{{"divisor", divisor_to_json(d)}}, d.str() + "\n");
}

void cmd_func_square_class(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const FunctionElement f = payload_function(read_payload(opt), e);
    const SquareClass c = is_square_class(f);
    emit(opt, square_class_to_json(c),
         std::string(c.is_square() ? "Square" : "NonSquare") + "\n");
}

// --- pgl -------------------------------------------------------------------

void cmd_pgl_mul(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.contains("A") || !j.contains("B")) fail("ParseError", "expected {\"A\": ..., \"B\": ...}");
    const PGLMat r = pgl_mul(matrix_from_json(j.at("A"), e), matrix_from_json(j.at("B"), e));
    emit(opt, json{{"product", matrix_to_json(r)}}, r.str() + "\n");
}

void cmd_pgl_det_class(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    const PGLMat A = matrix_from_json(j.contains("A") ? j.at("A") : j, e);
    const SquareClass c = det_class(A);
    emit(opt, square_class_to_json(c),
         std::string(c.is_square() ? "Square" : "NonSquare") + "\n");
}

void cmd_pgl_normalize(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    const PGLMat A = matrix_from_json(j.contains("A") ? j.at("A") : j, e);
    const InvolutionNormalForm nf = involution_normal_form(A);
    emit(opt,
         json{{"f", function_to_json(nf.f)}, {"conjugator", matrix_to_json(nf.conjugator)}},
         "f = " + nf.f.str() + "\nconjugator = " + nf.conjugator.str() + "\n");
}

void cmd_pgl_conjugate(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.contains("f") || !j.contains("g")) fail("ParseError", "expected {\"f\": ..., \"g\": ...}");
    const bool ok = involutions_conjugate(function_from_json(j.at("f"), e),
                                          function_from_json(j.at("g"), e));
    emit(opt, json{{"conjugate", ok}}, ok ? "true\n" : "false\n");
}

void cmd_pgl_normalizer(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const json j = read_payload(opt);
    if (!j.contains("M") || !j.contains("f")) fail("ParseError", "expected {\"M\": ..., \"f\": ...}");
    const NormalizerPart part =
        normalizer_decompose(matrix_from_json(j.at("M"), e), function_from_json(j.at("f"), e));
    json rep;
    std::string text;
    switch (part.kind) {
        case NormalizerPart::Kind::Even:
            rep = json{{"part", "EvenPart"}, {"a", function_to_json(*part.a)}, {"b", function_to_json(*part.b)}};
            text = "EvenPart a = " + part.a->str() + ", b = " + part.b->str() + "\n";
            break;
        case NormalizerPart::Kind::Odd:
            rep = json{{"part", "OddPart"}, {"a", function_to_json(*part.a)}, {"b", function_to_json(*part.b)}};
            text = "OddPart a = " + part.a->str() + ", b = " + part.b->str() + "\n";
            break;
        case NormalizerPart::Kind::NotMember:
            rep = json{{"part", "NotMember"}};
            text = "NotMember\n";
            break;
    }
    emit(opt, rep, text);
}

void cmd_pgl_fixed_locus(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const FunctionElement f = payload_function(read_payload(opt), e);
    const FixedLocus fl = fixed_locus(f);
    std::string text = fl.kind == FixedLocus::Kind::TwoSections ? "TwoSections\n"
                                                                : "DoubleCover ramified over " +
                                                                      points_line(fl.ramification) + "\n";
    emit(opt, fixed_locus_to_json(fl), text);
}

void cmd_pgl_klein_extend(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const FunctionElement f = payload_function(read_payload(opt), e);
    const PGLMat tau = klein_four_extend(f, opt.degree_bound);
    const KleinCertificate cert = klein_four_certificate(PGLMat::sigma(f), tau);
    emit(opt, json{{"tau", matrix_to_json(tau)}, {"certificate_valid", cert.valid}},
         "tau = " + tau.str() + "\n");
}

// --- bundle ----------------------------------------------------------------

void cmd_bundle_segre(const Options& opt) {
    const ModelInput m = model_from_json(read_payload(opt));
    if (m.kind != ModelInput::Kind::Surface)
        fail("InvalidModel", "segre expects a ruled-surface model");
    const std::int64_t s = segre_invariant(*m.surface);
    emit(opt, json{{"segre", s}}, std::to_string(s) + "\n");
}

void cmd_bundle_autc(const Options& opt) {
    const ModelInput m = model_from_json(read_payload(opt));
    AutCGroup g = m.kind == ModelInput::Kind::ConicBundle ? aut_c_conic(*m.bundle)
                                                          : aut_c_ruled(*m.surface);
    emit(opt, autc_to_json(g), "Aut_C = " + autc_human(g) + "\n");
}

void cmd_bundle_exceptional(const Options& opt) {
    const ModelInput m = model_from_json(read_payload(opt));
    if (m.kind != ModelInput::Kind::ConicBundle)
        fail("InvalidModel", "exceptional expects a conic-bundle model");
    const ExceptionalCheck ex = is_exceptional(*m.bundle);
    json rep{{"is_exceptional", ex.exceptional},
             {"n", ex.n},
             {"s1_sq", ex.s1_sq},
             {"s2_sq", ex.s2_sq}};
    emit(opt, rep,
         ex.exceptional ? "Exceptional(" + std::to_string(ex.n) + ")\n" : "NotExceptional\n");
}

void cmd_bundle_swap(const Options& opt) {
    const ModelInput m = model_from_json(read_payload(opt));
    if (m.kind != ModelInput::Kind::ConicBundle)
        fail("InvalidModel", "swap expects a conic-bundle model");
    const SwapInvolution sw = swap_involution(*m.bundle);
    if (!sw.exists) {
        emit(opt, json{{"exists", false}}, "DoesNotExist\n");
        return;
    }
    emit(opt,
         json{{"exists", true}, {"f", function_to_json(*sw.f)}, {"M", matrix_to_json(*sw.m)}},
         "Exists with f = " + sw.f->str() + "\n");
}

void cmd_bundle_classify(const Options& opt) {
    const ModelInput m = model_from_json(read_payload(opt));
    const MaxClass r = classify_input(m);
    std::string text = "class " + max_class_name(r.tag) + "\n";
    if (r.autc) text += "Aut_C = " + autc_human(*r.autc) + "\n";
    emit(opt, classification_to_json(r), text);
}

// --- chain / reproduce -----------------------------------------------------

void cmd_chain_demo(const Options& opt, int steps, std::int64_t orbit) {
    const EllipticCurve e = curve_of(opt);
    const std::vector<std::int64_t> sizes(static_cast<size_t>(steps), orbit);
    const auto chain = elementary_transform_chain(SurfaceModel::trivial(e), sizes);
    json arr = json::array();
    std::string text;
    for (const auto& s : chain) {
        arr.push_back(json{{"segre", segre_invariant(s)}, {"model", surface_to_json(s)}});
        text += std::to_string(segre_invariant(s)) + "\n";
    }
    emit(opt, json{{"chain", arr}}, text);
}

void cmd_reproduce_4torsion(const Options& opt) {
    const EllipticCurve e = curve_of(opt);
    const auto p1 = find_torsion(e, 4);
    if (!p1) fail("InvalidModel", "curve has no 4-torsion point: " + e.str());
    const CurvePoint p0 = CurvePoint::infinity();
    const CurvePoint p2 = scalar_mul(e, 2, *p1);
    const CurvePoint p3 = scalar_mul(e, 3, *p1);

    Divisor D(e);
    D.add_point(p0).add_point(*p1);
    Divisor minus_two_d = -(D + D);
    Divisor minus_delta(e);
    for (const auto& q : {p0, *p1, p2, p3}) minus_delta.add_point(q, -1);
    const bool equiv = is_linearly_equivalent(minus_two_d, minus_delta);

    const ConicBundleModel cb(SurfaceModel::decomposable(e, D), {}, {p0, *p1, p2, p3});
    const ExceptionalCheck ex = is_exceptional(cb);
    const MaxClass cls = classify_max(cb);

    json rep{{"curve", curve_to_json(e)},
             {"p1", point_to_json(*p1)},
             {"orbit", json::array({point_to_json(p0), point_to_json(*p1), point_to_json(p2),
                                    point_to_json(p3)})},
             {"D", divisor_to_json(D)},
             {"minus_2D_lineq_minus_orbit", equiv},
             {"exceptional", json{{"is_exceptional", ex.exceptional}, {"n", ex.n}}},
             {"classification", classification_to_json(cls)}};

    std::string text;
    text += e.str() + "\n";
    text += "p1 = " + p1->str() + " of order 4, orbit {" + p0.str() + ", " + p1->str() + ", " +
            p2.str() + ", " + p3.str() + "}\n";
    text += "D = " + D.str() + "\n";
    text += std::string("-2D ~ -(p0+p1+p2+p3): ") + (equiv ? "true" : "false") + "\n";
    text += "blow-up of the orbit on the degree-" + std::to_string(D.degree()) +
            " section: Exceptional(" + std::to_string(ex.n) + ")\n";
    if (cls.autc && cls.autc->beta)
        text += "swap involution [[0, f], [1, 0]] with f = " + cls.autc->beta->str() + "\n";
    text += "class " + max_class_name(cls.tag) + "\n";
    if (cls.autc) text += "Aut_C = " + autc_human(*cls.autc) + "\n";
    emit(opt, rep, text);
}

} // namespace

int main(int argc, char** argv) {
    std::cout << std::unitbuf; // reports stream line by line even into pipes

    CLI::App app{"exact divisor arithmetic and automorphism-group classification "
                 "for ruled surfaces and conic bundles over elliptic curves"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json_out, "emit canonical JSON instead of text");
    app.add_option("--p", opt.p, "field characteristic (prime > 3)");
    app.add_option("--a", opt.a, "curve coefficient a");
    app.add_option("--b", opt.b, "curve coefficient b");
    app.add_option("--seed", opt.seed, "seed for sampling commands");
    app.add_option("--degree-bound", opt.degree_bound, "degree bound for the klein search");
    app.add_option("--in", opt.in_file, "read the JSON payload from a file instead of stdin");

    std::function<void()> action;
    auto bind = [&](CLI::App* cmd, std::function<void()> fn) {
        cmd->fallthrough(); // global flags may follow the subcommand
        cmd->callback([&action, fn] { action = fn; });
    };

    auto* curve = app.add_subcommand("curve", "curve arithmetic");
    curve->require_subcommand(1);
    curve->fallthrough();
    bind(curve->add_subcommand("info", "curve summary"), [&] { cmd_curve_info(opt); });
    bind(curve->add_subcommand("points", "enumerate rational points"), [&] { cmd_curve_points(opt); });
    static std::int64_t torsion_n = 4;
    auto* tor = curve->add_subcommand("torsion", "find a point of exact order n");
    tor->add_option("--n", torsion_n, "order")->required();
    bind(tor, [&] { cmd_curve_torsion(opt, torsion_n); });

    auto* divisor = app.add_subcommand("divisor", "divisor arithmetic");
    divisor->require_subcommand(1);
    divisor->fallthrough();
    bind(divisor->add_subcommand("sum", "degree and group-sum"), [&] { cmd_divisor_sum(opt); });
    bind(divisor->add_subcommand("principal", "principality test"), [&] { cmd_divisor_principal(opt); });
    bind(divisor->add_subcommand("lineq", "linear equivalence of d1, d2"), [&] { cmd_divisor_lineq(opt); });
    bind(divisor->add_subcommand("witness", "function with the given principal divisor"),
         [&] { cmd_divisor_witness(opt); });
    bind(divisor->add_subcommand("translate", "pullback under translation"), [&] { cmd_divisor_translate(opt); });

    auto* func = app.add_subcommand("func", "function-field arithmetic");
    func->require_subcommand(1);
    func->fallthrough();
    bind(func->add_subcommand("eval", "value at a point"), [&] { cmd_func_eval(opt); });
    bind(func->add_subcommand("valuation", "order of vanishing at a point"), [&] { cmd_func_valuation(opt); });
    bind(func->add_subcommand("divisor", "divisor of zeros and poles"), [&] { cmd_func_divisor(opt); });
    bind(func->add_subcommand("square-class", "square class modulo constants"),
         [&] { cmd_func_square_class(opt); });

    auto* pgl = app.add_subcommand("pgl", "projective matrices over the function field");
    pgl->require_subcommand(1);
    pgl->fallthrough();
    bind(pgl->add_subcommand("mul", "product of A and B"), [&] { cmd_pgl_mul(opt); });
    bind(pgl->add_subcommand("det-class", "square class of the determinant"), [&] { cmd_pgl_det_class(opt); });
    bind(pgl->add_subcommand("normalize", "involution normal form"), [&] { cmd_pgl_normalize(opt); });
    bind(pgl->add_subcommand("conjugate", "conjugacy of sigma_f and sigma_g"), [&] { cmd_pgl_conjugate(opt); });
    bind(pgl->add_subcommand("normalizer", "normalizer membership of M"), [&] { cmd_pgl_normalizer(opt); });
    bind(pgl->add_subcommand("fixed-locus", "fixed locus of sigma_f"), [&] { cmd_pgl_fixed_locus(opt); });
    bind(pgl->add_subcommand("klein-extend", "commuting involution completing a Klein four-group"),
         [&] { cmd_pgl_klein_extend(opt); });

    auto* bundle = app.add_subcommand("bundle", "ruled-surface and conic-bundle models");
    bundle->require_subcommand(1);
    bundle->fallthrough();
    bind(bundle->add_subcommand("segre", "Segre invariant"), [&] { cmd_bundle_segre(opt); });
    bind(bundle->add_subcommand("autc", "fibrewise automorphism group"), [&] { cmd_bundle_autc(opt); });
    bind(bundle->add_subcommand("exceptional", "exceptional-bundle test"), [&] { cmd_bundle_exceptional(opt); });
    bind(bundle->add_subcommand("swap", "section-swapping involution"), [&] { cmd_bundle_swap(opt); });
    bind(bundle->add_subcommand("classify", "maximality class with witnesses"), [&] { cmd_bundle_classify(opt); });

    auto* chain = app.add_subcommand("chain", "elementary-transformation chains");
    chain->require_subcommand(1);
    chain->fallthrough();
    static int chain_steps = 5;
    static std::int64_t chain_orbit = 1;
    auto* demo = chain->add_subcommand("demo", "chain of strictly decreasing Segre invariants");
    demo->add_option("--steps", chain_steps, "number of steps");
    demo->add_option("--orbit", chain_orbit, "orbit size per step");
    bind(demo, [&] { cmd_chain_demo(opt, chain_steps, chain_orbit); });

    auto* rep = app.add_subcommand("reproduce", "worked examples");
    rep->require_subcommand(1);
    rep->fallthrough();
    bind(rep->add_subcommand("example-4torsion",
                             "exceptional bundle over the 4-torsion orbit of the default curve"),
         [&] { cmd_reproduce_4torsion(opt); });

    CLI11_PARSE(app, argc, argv);

    try {
        action();
    } catch (const domain_error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == "ParseError" ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
