#include "cfocus/catalog.hpp"
#include "cfocus/error.hpp"
#include "cfocus/structure.hpp"

#include <functional>
#include <tuple>

namespace cfocus {

std::vector<std::string> Expectations::tags() const {
    std::vector<std::string> out;
    if (center_candidate) out.push_back("CenterCandidate");
    if (isochronous) out.push_back("Isochronous");
    if (uniformly_isochronous) out.push_back("UniformlyIsochronous");
    if (hamiltonian) out.push_back("Hamiltonian");
    if (reversible) out.push_back("Reversible");
    if (cauchy_riemann) out.push_back("CauchyRiemann");
    if (focus_sign > 0) out.push_back("FocusSign(+)");
    if (focus_sign < 0) out.push_back("FocusSign(-)");
    if (darboux) out.push_back("DarbouxCandidate");
    return out;
}

namespace {

using Terms = std::initializer_list<std::tuple<int, int, Rational>>;

BiPoly poly(Terms terms) {
    BiPoly p;
    for (const auto &[i, j, c] : terms) p.add_term(i, j, c);
    return p;
}

class Params {
public:
    Params(const std::string &family, const std::vector<ParamSpec> &specs, const std::map<std::string, Rational> &given)
      : family_(family) {
        for (const auto &[k, v] : given) {
            bool known = false;
            for (const auto &s : specs) known = known || s.name == k;
            if (!known) throw Error(ErrorKind::InvalidArgument, family + " has no parameter '" + k + "'");
        }
        for (const auto &s : specs) {
            auto it = given.find(s.name);
            if (it != given.end())
                values_.emplace_back(s.name, it->second);
            else if (s.fallback)
                values_.emplace_back(s.name, *s.fallback);
            else
                throw Error(ErrorKind::MissingParam, family + " needs parameter '" + s.name + "'");
        }
    }

    const Rational &operator[](const std::string &k) const {
        for (const auto &[name, v] : values_)
            if (name == k) return v;
        throw Error(ErrorKind::Internal, "parameter lookup " + k);
    }
    const std::vector<std::pair<std::string, Rational>> &values() const { return values_; }

private:
    std::string family_;
    std::vector<std::pair<std::string, Rational>> values_;
};

struct Family {
    FamilyInfo info;
    std::function<void(const Params &, CatalogEntry &)> build;
};

std::vector<ParamSpec> zeros(std::initializer_list<const char *> names) {
    std::vector<ParamSpec> out;
    for (const char *n : names) out.push_back({n, Rational(0)});
    return out;
}

const Rational R0(0), R1(1), R2(2), R3(3);

void loud_quadratic(CatalogEntry &e, const BiPoly &y2) {
    // x' = y (1 + x), y' = -x + Y_2
    e.field = PlanarField(poly({{0, 1, R1}, {1, 1, R1}}), poly({{1, 0, -R1}}) + y2);
    e.clockwise = true;
    e.expect.center_candidate = true;
    e.expect.isochronous = true;
    e.expect.reversible = true;
}

void loud_cubic(CatalogEntry &e, Terms xs, Terms ys) {
    e.field = PlanarField(poly(xs), poly(ys));
    e.clockwise = true;
    e.expect.center_candidate = true;
    e.expect.isochronous = true;
    e.expect.reversible = true;
}

const std::vector<Family> &families() {
    static const std::vector<Family> table = [] {
        std::vector<Family> t;

        t.push_back({{"bautin", zeros({"l2", "l3", "l4", "l5", "l6"}), "Bautin normal form of the quadratic center"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &l2 = p["l2"], &l3 = p["l3"], &l4 = p["l4"], &l5 = p["l5"], &l6 = p["l6"];
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 0, -l3}, {1, 1, R2 * l2 + l5}, {0, 2, l6}}),
                                               poly({{1, 0, R1}, {2, 0, l2}, {1, 1, R2 * l3 + l4}, {0, 2, -l2}}));
                         e.expect.center_candidate = !bautin_classify(l2, l3, l4, l5, l6).empty();
                         e.expect.hamiltonian = l4.is_zero() && l5.is_zero();
                         // The return map confirms dV/dt = -(1/8) l5 (l3 - l6) r^4 + ...
                         Rational v1 = -l5 * (l3 - l6) / Rational(8);
                         e.expect.focus_sign = v1.sign();
                     }});

        t.push_back({{"schl", zeros({"a", "b", "c", "k", "l", "m"}), "Schlomiuk form, clockwise linear part"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &a = p["a"], &b = p["b"], &c = p["c"], &k = p["k"], &l = p["l"], &m = p["m"];
                         e.field = PlanarField(poly({{0, 1, R1}, {2, 0, a}, {1, 1, b}, {0, 2, c}}),
                                               poly({{1, 0, -R1}, {2, 0, k}, {1, 1, l}, {0, 2, m}}));
                         e.clockwise = true;
                         auto cases = schlomiuk_classify(a, b, c, k, l, m);
                         e.expect.center_candidate = !cases.empty();
                         e.expect.hamiltonian = cases.count(2) > 0;
                     }});

        t.push_back({{"schl1", {{"a", R0}, {"beta", R0}, {"lambda", std::nullopt}},
                      "one-parameter Darboux-integrable quadratic family"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &a = p["a"], &beta = p["beta"], &lam = p["lambda"];
                         if (lam.is_zero()) throw Error(ErrorKind::LambdaZero, "schl1 needs lambda != 0");
                         Rational s = (R3 * lam - R2) / lam, u = R2 * (R1 - lam) / lam;
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 0, a}, {0, 2, a * s}, {1, 1, beta * u}}),
                                               poly({{1, 0, R1}, {2, 0, beta * s}, {1, 1, a * u}, {0, 2, beta}}));
                         e.expect.center_candidate = true;
                         BiPoly g = poly({{0, 1, R2 * a / lam}, {1, 0, -R2 * beta / lam}});
                         e.expect.darboux = make_candidate(g, lam, 2);
                         if (lam == Rational(1, 2)) {
                             e.expect.cauchy_riemann = true;
                             e.expect.isochronous = true;
                         }
                         if (lam == Rational(2, 3)) {
                             e.expect.uniformly_isochronous = true;
                             e.expect.isochronous = true;
                         }
                     }});

        t.push_back({{"rgg", zeros({"l4", "l5"}), "holomorphic quadratic center z' = iz + (l4 - i l5) z^2/4"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &l4 = p["l4"], &l5 = p["l5"];
                         Rational q4 = l4 / Rational(4), q5 = l5 / Rational(4);
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 0, q4}, {0, 2, -q4}, {1, 1, l5 / R2}}),
                                               poly({{1, 0, R1}, {2, 0, -q5}, {0, 2, q5}, {1, 1, l4 / R2}}));
                         e.expect.center_candidate = true;
                         e.expect.cauchy_riemann = true;
                         e.expect.isochronous = true;
                     }});

        t.push_back({{"req", zeros({"alpha", "r", "s"}), "quadratic system reversible in the x-axis"},
                     [](const Params &p, CatalogEntry &e) {
                         e.field = PlanarField(poly({{0, 1, -R1}, {1, 1, -R2 * p["alpha"]}}),
                                               poly({{1, 0, R1}, {0, 2, p["r"]}, {2, 0, p["s"]}}));
                         e.expect.center_candidate = true;
                         e.expect.reversible = true;
                     }});

        t.push_back({{"reqq", zeros({"b", "c", "beta"}), "quadratic system reversible in the y-axis"},
                     [](const Params &p, CatalogEntry &e) {
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 0, p["b"]}, {0, 2, p["c"]}}),
                                               poly({{1, 0, R1}, {1, 1, p["beta"]}}));
                         e.expect.center_candidate = true;
                         e.expect.reversible = true;
                     }});

        t.push_back({{"loud1", {}, "Loud isochronous quadratic i: y' = -x + y^2"},
                     [](const Params &, CatalogEntry &e) {
                         loud_quadratic(e, poly({{0, 2, R1}}));
                         // x Y - y X = x y^2 - y (x y) = 0
                         e.expect.uniformly_isochronous = true;
                     }});
        t.push_back({{"loud2", {}, "Loud isochronous quadratic ii: y' = -x + (y^2 - x^2)/2"},
                     [](const Params &, CatalogEntry &e) {
                         loud_quadratic(e, poly({{0, 2, Rational(1, 2)}, {2, 0, Rational(-1, 2)}}));
                         e.expect.cauchy_riemann = true;
                     }});
        t.push_back({{"loud3", {}, "Loud isochronous quadratic iii: y' = -x + y^2/4"},
                     [](const Params &, CatalogEntry &e) { loud_quadratic(e, poly({{0, 2, Rational(1, 4)}})); }});
        t.push_back({{"loud4", {}, "Loud isochronous quadratic iv: y' = -x + 2y^2 - x^2/2"},
                     [](const Params &, CatalogEntry &e) {
                         loud_quadratic(e, poly({{0, 2, R2}, {2, 0, Rational(-1, 2)}}));
                     }});

        t.push_back({{"kukles", zeros({"alpha", "beta", "gamma", "K", "L", "M", "N"}), "Kukles cubic system"},
                     [](const Params &p, CatalogEntry &e) {
                         e.field = PlanarField(poly({{0, 1, -R1}}),
                                               poly({{1, 0, R1},
                                                     {2, 0, p["alpha"]},
                                                     {0, 2, p["beta"]},
                                                     {1, 1, p["gamma"]},
                                                     {3, 0, p["K"]},
                                                     {2, 1, p["L"]},
                                                     {1, 2, p["M"]},
                                                     {0, 3, p["N"]}}));
                     }});

        t.push_back({{"chava56", zeros({"a", "b"}), "quadratic system with degenerate infinity"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &a = p["a"], &b = p["b"];
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 0, a}, {1, 1, b}}),
                                               poly({{1, 0, R1}, {1, 1, a}, {0, 2, b}}));
                         e.expect.center_candidate = true;
                         e.expect.isochronous = true;
                         e.expect.uniformly_isochronous = true;
                         e.expect.darboux = make_candidate(poly({{0, 1, R3 * a}, {1, 0, -R3 * b}}), Rational(2, 3), 2);
                     }});

        t.push_back({{"chava23", zeros({"a", "b", "L", "M"}), "cubic system with degenerate infinity"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &a = p["a"], &b = p["b"], &L = p["L"], &M = p["M"];
                         // x' = -y + a(x^2-y^2) + 2bxy + x S,  y' = x - b(x^2-y^2) + 2axy + y S
                         BiPoly S = poly({{2, 0, L}, {1, 1, M}, {0, 2, -L}});
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 0, a}, {0, 2, -a}, {1, 1, R2 * b}}) + BiPoly::x() * S,
                                               poly({{1, 0, R1}, {2, 0, -b}, {0, 2, b}, {1, 1, R2 * a}}) + BiPoly::y() * S);
                         e.expect.center_candidate = true;
                         e.expect.isochronous = true;
                         e.expect.uniformly_isochronous = a.is_zero() && b.is_zero();
                     }});

        t.push_back({{"cubic_qh", zeros({"A", "B", "C", "D", "K", "L", "M", "N"}), "quasi-homogeneous cubic"},
                     [](const Params &p, CatalogEntry &e) {
                         e.field = PlanarField(
                             poly({{0, 1, -R1}, {3, 0, p["A"]}, {2, 1, p["B"]}, {1, 2, p["C"]}, {0, 3, p["D"]}}),
                             poly({{1, 0, R1}, {3, 0, p["K"]}, {2, 1, p["L"]}, {1, 2, p["M"]}, {0, 3, p["N"]}}));
                         Rational v = (R3 * (p["A"] + p["N"]) + p["L"] + p["C"]) / Rational(8);
                         e.expect.focus_sign = v.sign();
                     }});

        t.push_back({{"rloud_cubic1", {}, "isochronous cubic i: x' = y(1+x^2), y' = -x(1-y^2)"},
                     [](const Params &, CatalogEntry &e) {
                         loud_cubic(e, {{0, 1, R1}, {2, 1, R1}}, {{1, 0, -R1}, {1, 2, R1}});
                         e.expect.uniformly_isochronous = true;
                     }});
        t.push_back({{"rloud_cubic2", {}, "isochronous cubic ii: z' = i(z + z^3) up to orientation"},
                     [](const Params &, CatalogEntry &e) {
                         loud_cubic(e, {{0, 1, R1}, {2, 1, -R3}, {0, 3, R1}}, {{1, 0, -R1}, {1, 2, -R3}, {3, 0, R1}});
                         e.expect.cauchy_riemann = true;
                     }});
        t.push_back({{"rloud_cubic3", {}, "isochronous cubic iii: x' = y(1+9x^2-2y^2), y' = -x(1-3y^2)"},
                     [](const Params &, CatalogEntry &e) {
                         loud_cubic(e, {{0, 1, R1}, {2, 1, Rational(9)}, {0, 3, -R2}}, {{1, 0, -R1}, {1, 2, R3}});
                     }});
        t.push_back({{"rloud_cubic4", {}, "isochronous cubic iv: x' = y(1-9x^2+2y^2), y' = -x(1+3y^2)"},
                     [](const Params &, CatalogEntry &e) {
                         loud_cubic(e, {{0, 1, R1}, {2, 1, Rational(-9)}, {0, 3, R2}}, {{1, 0, -R1}, {1, 2, -R3}});
                     }});

        t.push_back({{"quartic_uuu", {}, "quartic center with a focus at (x*, 1), x*^3 - x* + 1 = 0"},
                     [](const Params &, CatalogEntry &e) {
                         e.field = PlanarField(poly({{0, 1, -R1}, {0, 4, R1}}),
                                               poly({{1, 0, R1}, {4, 0, R1}, {2, 2, -R1}}));
                         e.expect.center_candidate = true;
                         e.extra_equilibria.push_back({-1.3247179572447460, 1.0});
                     }});

        t.push_back({{"quartic_ttt", {{"a", R1}}, "non-reversible quartic center"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &a = p["a"];
                         e.field = PlanarField(poly({{0, 1, -R1}}),
                                               poly({{1, 0, R1}, {0, 4, a}, {3, 1, Rational(-4) * a}}));
                         e.expect.center_candidate = true;
                     }});

        t.push_back({{"quintic_ssss", {}, "non-reversible quintic center"},
                     [](const Params &, CatalogEntry &e) {
                         e.field = PlanarField(poly({{0, 1, -R1}}),
                                               poly({{1, 0, R1}, {4, 1, Rational(-5)}, {0, 5, R1}}));
                         e.expect.center_candidate = true;
                     }});

        t.push_back({{"quartic_family", {{"L40", R0}, {"L22", R0}, {"K04", R0}, {"K22", R0}, {"lambda", std::nullopt}},
                      "quasi-homogeneous quartic family with a claimed Darboux integral"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &L40 = p["L40"], &L22 = p["L22"], &K04 = p["K04"], &K22 = p["K22"],
                                        &lam = p["lambda"];
                         if (lam.is_zero()) throw Error(ErrorKind::LambdaZero, "quartic_family needs lambda != 0");
                         const Rational l2 = lam * lam, three_l2 = R3 * l2;
                         const Rational poly15 = Rational(15) * l2 - Rational(16) * lam + Rational(4);
                         e.field = PlanarField(
                             poly({{0, 1, -R1},
                                   {4, 0, L40},
                                   {2, 2, L22},
                                   {1, 3, -R2 * K04 * (R2 * lam - R1) / lam},
                                   {3, 1, -((Rational(10) * lam - Rational(4)) * K04 + R2 * lam * (lam - R1) * K22) / three_l2},
                                   {0, 4, -(lam * (R2 - Rational(5) * lam) * L22 + poly15 * L40) / three_l2}}),
                             poly({{1, 0, R1},
                                   {0, 4, K04},
                                   {2, 2, K22},
                                   {3, 1, -R2 * (R2 * lam - R1) * L40 / lam},
                                   {1, 3, -R2 * ((Rational(5) * lam - R2) * L40 + lam * (lam - R1) * L22) / three_l2},
                                   {4, 0, -R2 * (poly15 * K04 + (R2 * lam - Rational(5) * l2) * K22) / three_l2}}));
                         e.unverified_source = true;
                         e.claimed = {"CenterCandidate", "DarbouxCandidate"};
                     }});

        t.push_back({{"quintic_family",
                      {{"L50", R0}, {"L41", R0}, {"L23", R0}, {"K05", R0}, {"Lambda", R0}, {"lambda", std::nullopt}},
                      "quasi-homogeneous quintic family with a claimed Darboux integral"},
                     [](const Params &p, CatalogEntry &e) {
                         const Rational &L50 = p["L50"], &L41 = p["L41"], &L23 = p["L23"], &K05 = p["K05"],
                                        &Lam = p["Lambda"], &lam = p["lambda"];
                         if (lam.is_zero()) throw Error(ErrorKind::LambdaZero, "quintic_family needs lambda != 0");
                         const Rational l2 = lam * lam, l3 = l2 * lam;
                         const Rational q = R2 * l2 - R3 * lam + R1;
                         BiPoly P = poly({{0, 1, -R1},
                                          {5, 0, L50},
                                          {4, 1, L41},
                                          {2, 3, -(R3 * lam * K05 + L50 * (R2 - R3 * lam)) / lam},
                                          {1, 4, K05 * (Rational(5) * lam - R2) / lam},
                                          {0, 5, (R3 * lam - R1) / (R2 * l3) * (l2 * L23 - R2 * Lam * q + lam * (R1 - R2 * lam) * L41)}});
                         // the source lists the x^2 y^3 monomial twice; both are kept
                         P.add_term(2, 3, L23);
                         BiPoly Q = poly({{1, 0, R1},
                                          {4, 1, -(R2 - Rational(5) * lam) / lam * L50},
                                          {2, 3, -((R3 * lam - R2) * K05 / lam - R3 * L50)},
                                          {0, 5, -K05},
                                          {1, 4, (l2 * (lam - R1) + Lam * (Rational(6) * l2 - Rational(8) * lam + R2) + lam * (R3 * lam - R1) * L41) / (R2 * l3)}});
                         e.field = PlanarField(P, Q);
                         e.unverified_source = true;
                         e.claimed = {"CenterCandidate", "DarbouxCandidate"};
                     }});

        t.push_back({{"r01200", zeros({"b", "c", "beta", "gamma"}),
                      "cubic x' = y(-1 + b x^2 + c y^2), y' = x(1 + beta x^2 + gamma y^2)"},
                     [](const Params &p, CatalogEntry &e) {
                         e.field = PlanarField(poly({{0, 1, -R1}, {2, 1, p["b"]}, {0, 3, p["c"]}}),
                                               poly({{1, 0, R1}, {3, 0, p["beta"]}, {1, 2, p["gamma"]}}));
                         e.expect.center_candidate = true;
                         e.expect.reversible = true;
                     }});
        return t;
    }();
    return table;
}

} // namespace

std::vector<FamilyInfo> catalog_list() {
    std::vector<FamilyInfo> out;
    for (const auto &f : families()) out.push_back(f.info);
    return out;
}

CatalogEntry catalog_get(const std::string &name, const std::map<std::string, Rational> &params) {
    for (const auto &f : families()) {
        if (f.info.name != name) continue;
        Params p(name, f.info.params, params);
        CatalogEntry e;
        e.name = name;
        e.params = p.values();
        e.summary = f.info.summary;
        f.build(p, e);
        return e;
    }
    throw Error(ErrorKind::UnknownName, "no catalog entry named '" + name + "'");
}

} // namespace cfocus
