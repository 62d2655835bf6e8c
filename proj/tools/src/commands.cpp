#include "commands.hpp"

#include "cfocus/catalog.hpp"
#include "cfocus/error.hpp"
#include "cfocus/numeric.hpp"
#include "cfocus/structure.hpp"
#include "cfocus/version.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace cfocus::cli {

namespace {

struct Loaded {
    std::string path;
    std::string bytes;
    SystemDocument doc;
};

Loaded load(const std::string &path) {
    Loaded in;
    in.path = path;
    in.bytes = read_file(path);
    try {
        in.doc = parse_document(in.bytes);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.message(), e.line(), e.column());
    }
    return in;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json rat(const Rational &r) { return {{"exact", r.str()}, {"approx", r.to_double()}}; }

Json report(const Invocation &inv, const Loaded *in) {
    Json j;
    j["command"] = inv.command_line;
    if (in) {
        j["input"] = {{"path", in->path}, {"digest", digest(in->bytes)}};
        j["system"] = in->doc.name;
        j["clockwise"] = in->doc.clockwise();
    }
    j["engine"] = std::string("cfocus ") + kVersion;
    return j;
}

std::string banner(const Loaded &in) {
    std::string s = "system: " + (in.doc.name.empty() ? std::string("(unnamed)") : in.doc.name) + " [" + in.path + "]\n";
    if (in.doc.clockwise()) s += "orientation: clockwise as written; analysed with time reversed\n";
    return s;
}

Json tolerance(const IntegratorConfig &cfg) { return {{"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}}; }

std::string tolerance_text(const IntegratorConfig &cfg) {
    return "integrator tolerance: rel " + num(cfg.rel_tol) + ", abs " + num(cfg.abs_tol) + "\n";
}

Json constants_json(const LyapunovResult &r) {
    Json out = Json::array();
    for (std::size_t i = 0; i < r.v_list.size(); ++i) {
        Json c = rat(r.v_list[i]);
        c["index"] = i + 1;
        c["power"] = i + 2;
        out.push_back(c);
    }
    return out;
}

std::string constants_text(const LyapunovResult &r) {
    std::string s;
    for (std::size_t i = 0; i < r.v_list.size(); ++i)
        s += "V_" + std::to_string(i + 1) + " = " + r.v_list[i].str() + "  (~" + num(r.v_list[i].to_double()) +
             ")  on (x^2+y^2)^" + std::to_string(i + 2) + "\n";
    return s;
}

int symbolic_sign(const Verdict &v) {
    switch (v.kind) {
    case Verdict::Kind::StableFocus: return -1;
    case Verdict::Kind::UnstableFocus: return 1;
    default: return 0;
    }
}

// Bautin normal form parameters, when the quadratic part has that shape.
std::optional<std::array<Rational, 5>> bautin_parameters(const PlanarField &f) {
    if (f.degree() != 2 || !(f.q().coeff(0, 2) == -f.q().coeff(2, 0))) return std::nullopt;
    const Rational l2 = f.q().coeff(2, 0), l3 = -f.p().coeff(2, 0), l6 = f.p().coeff(0, 2);
    const Rational l5 = f.p().coeff(1, 1) - Rational(2) * l2, l4 = f.q().coeff(1, 1) - Rational(2) * l3;
    return std::array<Rational, 5>{l2, l3, l4, l5, l6};
}

std::string join(const std::set<int> &cases) {
    std::string s;
    for (int c : cases) s += (s.empty() ? "" : ", ") + roman(c);
    return s.empty() ? "none" : s;
}

Json cases_json(const std::set<int> &cases) {
    Json out = Json::array();
    for (int c : cases) out.push_back(roman(c));
    return out;
}

} // namespace

Outcome guarded(const Invocation &inv, const std::string &path, const std::function<Outcome()> &body) {
    auto failure = [&](int code, const std::string &kind, const std::string &msg, bool name_path) {
        Outcome o;
        o.code = code;
        o.failed = true;
        o.json = report(inv, nullptr);
        if (!path.empty()) o.json["input"] = {{"path", path}};
        o.json["error"] = {{"kind", kind}, {"message", msg}};
        o.text = "error: " + (name_path && !path.empty() ? path + ": " : std::string()) + msg + "\n";
        return o;
    };
    try {
        return body();
    } catch (const ParseError &e) {
        return failure(kUsage, "ParseError", e.what(), false);
    } catch (const InputError &e) {
        return failure(kUsage, "InputError", e.what(), false);
    } catch (const Error &e) {
        return failure(kEngine, error_kind_name(e.kind()), e.what(), true);
    } catch (const std::exception &e) {
        return failure(kEngine, "Internal", e.what(), true);
    }
}

Outcome cmd_analyze(const Invocation &inv, const std::string &path, int order) {
    const Loaded in = load(path);
    const LyapunovResult r = compute_lyapunov(in.doc.analysis_field(), order);

    Outcome o;
    o.json = report(inv, &in);
    Json hs = Json::array();
    for (const auto &h : r.h_list) hs.push_back({{"degree", h.degree()}, {"terms", terms_json(h.poly())}});
    o.json["results"] = {{"order", order},
                         {"H", hs},
                         {"constants", constants_json(r)},
                         {"first_nonzero", r.first_nonzero()},
                         {"verdict", r.verdict.str()}};

    std::ostringstream os;
    os << banner(in) << "order: " << order << "\n";
    for (const auto &h : r.h_list) os << "H_" << h.degree() << " = " << (h.poly().is_zero() ? "0" : h.poly().str()) << "\n";
    os << constants_text(r) << "verdict: " << r.verdict.str() << "\n";
    o.text = os.str();
    return o;
}

Outcome cmd_classify(const Invocation &inv, const std::string &path, int order, const std::vector<double> &c_grid) {
    const Loaded in = load(path);
    const PlanarField f = in.doc.analysis_field();
    Outcome o;
    o.json = report(inv, &in);
    Json res;
    std::ostringstream os;
    os << banner(in);
    std::vector<std::string> disagreements;

    const LyapunovResult lyap = compute_lyapunov(f, order);
    res["symbolic"] = {{"order", order}, {"constants", constants_json(lyap)}, {"verdict", lyap.verdict.str()}};
    os << "symbolic (order " << order << "): " << lyap.verdict.str() << "\n" << constants_text(lyap);

    const SymmetryReport sym = detect_symmetries(f);
    res["symmetry"] = {{"reversible_x_axis", sym.rev_x_axis},
                       {"reversible_y_axis", sym.rev_y_axis},
                       {"cauchy_riemann", sym.cauchy_riemann},
                       {"hamiltonian", sym.hamiltonian}};
    os << "reversible about x-axis: " << (sym.rev_x_axis ? "yes" : "no") << "\n"
       << "reversible about y-axis: " << (sym.rev_y_axis ? "yes" : "no") << "\n"
       << "Cauchy-Riemann: " << (sym.cauchy_riemann ? "yes" : "no") << "\n"
       << "Hamiltonian: " << (sym.hamiltonian ? "yes" : "no") << "\n";
    if (sym.hamiltonian) {
        if (auto H = hamiltonian_of(f)) {
            res["symmetry"]["conserved_H"] = terms_json(*H);
            os << "conserved H = " << H->str() << "\n";
        }
    }
    const bool certified = sym.rev_x_axis || sym.rev_y_axis || sym.cauchy_riemann || sym.hamiltonian;
    if (certified && symbolic_sign(lyap.verdict) != 0)
        disagreements.push_back("a symmetry certifies a center but the constants give " + lyap.verdict.str());

    if (auto wc = weak_center_check(f)) {
        Json w = {{"mu", rat(wc->mu)},
                  {"integral_ok", wc->integral_ok},
                  {"divergence_average_ok", wc->divergence_average_ok},
                  {"parity_ok", wc->parity_ok}};
        w["lambda_darboux"] = wc->lambda_darboux ? Json(wc->lambda_darboux->str()) : Json(nullptr);
        res["weak_center"] = w;
        os << "weak center identity: mu = " << wc->mu.str() << ", integral averages "
           << (wc->integral_ok ? "vanish" : "do not vanish") << ", divergence averages "
           << (wc->divergence_average_ok ? "vanish" : "do not vanish") << ", parity " << (wc->parity_ok ? "ok" : "fails");
        if (wc->lambda_darboux) os << ", lambda = " << wc->lambda_darboux->str();
        os << "\n";
    } else {
        res["weak_center"] = nullptr;
        os << "weak center identity: no mu\n";
    }

    try {
        HGDecomposition hg = hg_decompose(f);
        res["hg"] = {{"h", terms_json(hg.h)}, {"g", terms_json(hg.g)}};
        os << "h = " << (hg.h.is_zero() ? "0" : hg.h.str()) << ", g = " << (hg.g.is_zero() ? "0" : hg.g.str()) << "\n";
    } catch (const ObstructionError &e) {
        res["hg"] = {{"obstruction", {{"degree", e.degree()}, {"average", rat(e.value())}}}};
        os << "(h, g) form: none, divergence of degree " << e.degree() << " averages " << e.value().str() << "\n";
    }

    if (f.degree() == 2) {
        if (auto b = bautin_parameters(f)) {
            const auto &l = *b;
            auto cases = bautin_classify(l[0], l[1], l[2], l[3], l[4]);
            Json params = Json::object();
            for (int k = 0; k < 5; ++k) params["l" + std::to_string(k + 2)] = l[k].str();
            res["bautin"] = {{"params", params}, {"cases", cases_json(cases)}};
            os << "Bautin cases: " << join(cases) << "\n";
            if (!cases.empty() && symbolic_sign(lyap.verdict) != 0)
                disagreements.push_back("Bautin case holds but the constants give " + lyap.verdict.str());
        }
        // the Schlomiuk form writes the linear part clockwise
        const PlanarField cw = f.reversed();
        auto cases = schlomiuk_classify(cw.p().coeff(2, 0), cw.p().coeff(1, 1), cw.p().coeff(0, 2), cw.q().coeff(2, 0),
                                        cw.q().coeff(1, 1), cw.q().coeff(0, 2));
        res["schlomiuk"] = {{"cases", cases_json(cases)}};
        os << "Schlomiuk cases: " << join(cases) << "\n";
    }

    const IntegratorConfig cfg;
    try {
        NumericVerdict nv = numeric_classify(f, c_grid, cfg);
        Json samples = Json::array();
        for (const auto &s : nv.samples) samples.push_back({{"c", s.c}, {"p", s.p_of_c}, {"delta", s.delta}});
        res["numeric"] = {{"verdict", nv.str()}, {"threshold", nv.tol}, {"samples", samples}, {"tolerance", tolerance(cfg)}};
        os << "numeric: " << nv.str() << " (|P(c) - c| threshold " << num(nv.tol) << ")\n";
        for (const auto &s : nv.samples) os << "  c = " << num(s.c) << ": P(c) - c = " << num(s.delta) << "\n";
        os << "  " << tolerance_text(cfg);

        const int sign = symbolic_sign(lyap.verdict);
        if (nv.kind == NumericVerdict::Kind::Inconsistent)
            disagreements.push_back("numeric samples disagree with each other");
        else if (sign == 0 && nv.kind == NumericVerdict::Kind::FocusLike)
            disagreements.push_back("constants vanish to order " + std::to_string(order) + " but numerics give " + nv.str());
        else if (sign != 0 && nv.kind == NumericVerdict::Kind::CenterLike)
            disagreements.push_back("constants give " + lyap.verdict.str() + " but numerics give CenterLike");
        else if (sign != 0 && nv.sign != sign)
            disagreements.push_back("constants give " + lyap.verdict.str() + " but numerics give " + nv.str());
    } catch (const Error &e) {
        res["numeric"] = {{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}};
        os << "numeric: failed: " << e.what() << "\n";
        o.code = kEngine;
    }

    Json dis = Json::array();
    for (const auto &d : disagreements) {
        dis.push_back(d);
        os << "DISAGREEMENT: " << d << "\n";
    }
    res["disagreements"] = dis;
    if (!disagreements.empty()) o.code = kDisagreement;
    o.json["results"] = res;
    o.text = os.str();
    return o;
}

Outcome cmd_inverse(const Invocation &inv, const std::string &spec_path, int check_order) {
    Loaded in;
    in.path = spec_path;
    in.bytes = read_file(spec_path);
    InverseSpec spec;
    try {
        spec = parse_spec(in.bytes);
    } catch (const ParseError &e) {
        throw ParseError(spec_path + ": " + e.message(), e.line(), e.column());
    }
    spec.validate();
    in.doc.name = "inverse m=" + std::to_string(spec.m);
    in.doc.field = build_field(spec);
    in.doc.metadata = {{"source", "inverse"}, {"m", spec.m}};

    const BiPoly cond = divergence_condition(spec);
    const auto residuals = complementary_residuals(spec, check_order);
    const LyapunovResult lyap = compute_lyapunov(in.doc.field, check_order);

    Outcome o;
    o.json = report(inv, &in);
    Json res;
    res["field"] = document_json(in.doc);
    res["hamiltonian"] = cond.is_zero();
    res["divergence_condition"] = terms_json(cond);
    Json rs = Json::array();
    for (std::size_t i = 0; i < residuals.size(); ++i)
        rs.push_back({{"degree", spec.m + static_cast<int>(i) + 1}, {"terms", terms_json(residuals[i])}});
    res["residuals"] = rs;
    res["lyapunov"] = {{"order", check_order}, {"constants", constants_json(lyap)}, {"verdict", lyap.verdict.str()}};
    o.json["results"] = res;

    std::ostringstream os;
    os << "inverse spec, m = " << spec.m << " [" << spec_path << "]\n"
       << "x' = " << in.doc.field.p().str() << "\n"
       << "y' = " << in.doc.field.q().str() << "\n"
       << "divergence condition: " << (cond.is_zero() ? "0 (Hamiltonian)" : cond.str()) << "\n";
    for (std::size_t i = 0; i < residuals.size(); ++i)
        os << "residual, degree " << spec.m + static_cast<int>(i) + 1 << ": "
           << (residuals[i].is_zero() ? "0" : residuals[i].str()) << "\n";
    os << constants_text(lyap) << "verdict: " << lyap.verdict.str() << "\n";
    o.text = os.str();
    return o;
}

Outcome cmd_darboux(const Invocation &inv, const std::string &path, const std::optional<std::string> &curve_path,
                    const std::optional<Rational> &lambda) {
    const Loaded in = load(path);
    const PlanarField f = in.doc.analysis_field();
    Outcome o;
    o.json = report(inv, &in);
    Json res;
    std::ostringstream os;
    os << banner(in);

    if (curve_path) {
        const std::string bytes = read_file(*curve_path);
        BiPoly curve;
        try {
            curve = parse_curve(bytes);
        } catch (const ParseError &e) {
            throw ParseError(*curve_path + ": " + e.message(), e.line(), e.column());
        }
        Json c = {{"curve", terms_json(curve)}, {"digest", digest(bytes)}};
        os << "curve: " << curve.str() << " = 0\n";
        if (auto cert = find_cofactor(f, curve)) {
            const bool ok = verify_certificate(f, *cert);
            c["invariant"] = true;
            c["cofactor"] = terms_json(cert->cofactor);
            c["verified"] = ok;
            os << "cofactor K = " << (cert->cofactor.is_zero() ? "0" : cert->cofactor.str()) << "\n"
               << "certificate X(curve) = K * curve: " << (ok ? "verified" : "FAILED") << "\n";
            if (!ok) o.code = kEngine;
        } else {
            c["invariant"] = false;
            os << "not invariant: X(curve) is not divisible by the curve\n";
        }
        res["curve"] = c;
    }
    if (lambda) {
        const HGDecomposition hg = hg_decompose(f);
        const DarbouxCandidate cand = make_candidate(hg.g, *lambda, f.degree());
        const bool ok = verify_darboux(f, cand);
        res["candidate"] = {{"g", terms_json(cand.g)},
                            {"lambda", cand.lambda.str()},
                            {"form", form_name(cand.form)},
                            {"integral", cand.describe()},
                            {"verified", ok}};
        os << "candidate (" << form_name(cand.form) << "): " << cand.describe() << "\n"
           << "first integral: " << (ok ? "verified" : "rejected") << "\n";
    }
    o.json["results"] = res;
    o.text = os.str();
    return o;
}

Outcome cmd_returnmap(const Invocation &inv, const std::string &path, const std::vector<double> &c_grid) {
    const Loaded in = load(path);
    const PlanarField f = in.doc.analysis_field();
    const IntegratorConfig cfg;
    Outcome o;
    o.json = report(inv, &in);
    Json samples = Json::array();
    std::ostringstream os;
    os << banner(in);
    for (double c : c_grid) {
        ReturnMapSample s = return_map(f, c, cfg);
        samples.push_back({{"c", s.c}, {"p", s.p_of_c}, {"delta", s.delta}, {"theta_total", s.theta_total}, {"time", s.time}});
        os << "c = " << num(s.c) << ": P(c) = " << num(s.p_of_c) << ", P(c) - c = " << num(s.delta)
           << ", return time = " << num(s.time) << "\n";
    }
    o.json["results"] = {{"samples", samples}, {"tolerance", tolerance(cfg)}};
    os << tolerance_text(cfg);
    o.text = os.str();
    return o;
}

Outcome cmd_period(const Invocation &inv, const std::string &path, const std::vector<double> &c_grid) {
    const Loaded in = load(path);
    const PlanarField f = in.doc.analysis_field();
    const IntegratorConfig cfg;
    constexpr double two_pi = 2 * std::numbers::pi;
    Outcome o;
    o.json = report(inv, &in);
    Json samples = Json::array();
    std::ostringstream os;
    os << banner(in);
    for (double c : c_grid) {
        PeriodSample s = period(f, c, cfg);
        samples.push_back({{"c", s.c}, {"period", s.period}, {"minus_two_pi", s.period - two_pi}});
        os << "c = " << num(s.c) << ": T = " << num(s.period) << ", T - 2pi = " << num(s.period - two_pi) << "\n";
    }
    o.json["results"] = {{"samples", samples}, {"tolerance", tolerance(cfg)}};
    os << tolerance_text(cfg);
    o.text = os.str();
    return o;
}

Outcome cmd_orbit(const Invocation &inv, const std::string &path, double x0, double y0, double t_end,
                  const std::string &csv_path) {
    const Loaded in = load(path);
    const IntegratorConfig cfg;
    // the orbit follows the system as written, clockwise or not
    const Trajectory tr = integrate(in.doc.field, x0, y0, t_end, cfg);
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw InputError("cannot write " + csv_path);
    write_trajectory_csv(csv, tr);
    csv.close();
    if (!csv) throw InputError("failed writing " + csv_path);

    Outcome o;
    o.json = report(inv, &in);
    const auto &last = tr.back();
    o.json["results"] = {{"points", tr.size()},
                         {"t_end", last.t},
                         {"final", {{"x", last.x}, {"y", last.y}}},
                         {"csv", csv_path},
                         {"tolerance", tolerance(cfg)}};
    std::ostringstream os;
    os << banner(in) << tr.size() << " points written to " << csv_path << "\n"
       << "final state at t = " << num(last.t) << ": (" << num(last.x) << ", " << num(last.y) << ")\n"
       << tolerance_text(cfg);
    o.text = os.str();
    return o;
}

Outcome cmd_catalog_list(const Invocation &inv) {
    Outcome o;
    o.json = report(inv, nullptr);
    Json fams = Json::array();
    std::ostringstream os;
    for (const auto &fam : catalog_list()) {
        Json ps = Json::array();
        std::string sig;
        for (const auto &p : fam.params) {
            ps.push_back({{"name", p.name}, {"default", p.fallback ? Json(p.fallback->str()) : Json(nullptr)}});
            sig += (sig.empty() ? "" : ", ") + p.name + (p.fallback ? "=" + p.fallback->str() : "");
        }
        fams.push_back({{"name", fam.name}, {"params", ps}, {"summary", fam.summary}});
        os << fam.name << "(" << sig << ")  " << fam.summary << "\n";
    }
    o.json["results"] = {{"families", fams}};
    o.text = os.str();
    return o;
}

Outcome cmd_catalog_get(const Invocation &, const std::string &name, const std::map<std::string, Rational> &params) {
    const CatalogEntry e = catalog_get(name, params);
    SystemDocument doc;
    doc.name = e.name;
    doc.field = e.field;
    Json ps = Json::object();
    for (const auto &[k, v] : e.params) ps[k] = v.str();
    Json md = {{"family", name}, {"params", ps}, {"clockwise", e.clockwise}, {"summary", e.summary}};
    Json tags = Json::array();
    for (const auto &t : e.expect.tags()) tags.push_back(t);
    md["tags"] = tags;
    if (e.expect.darboux)
        md["darboux"] = {{"g", terms_json(e.expect.darboux->g)},
                         {"lambda", e.expect.darboux->lambda.str()},
                         {"form", form_name(e.expect.darboux->form)}};
    if (!e.extra_equilibria.empty()) {
        Json eq = Json::array();
        for (const auto &p : e.extra_equilibria) eq.push_back({p[0], p[1]});
        md["extra_equilibria"] = eq;
    }
    if (e.unverified_source) {
        md["unverified_source"] = true;
        md["claimed"] = e.claimed;
    }
    doc.metadata = md;

    Outcome o;
    o.json = document_json(doc);
    o.text = o.json.dump(2) + "\n";
    return o;
}

} // namespace cfocus::cli
