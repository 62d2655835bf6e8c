// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "cfocus/catalog.hpp"
#include "cfocus/error.hpp"
#include "cfocus/homological.hpp"
#include "cfocus/inverse.hpp"
#include "cfocus/numeric.hpp"
#include "cfocus/structure.hpp"
#include "support/random.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace cfocus;
using namespace cfocus::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    // Records the first failure only; later ones just flip the flag.
    void fail(const std::string &why) {
        if (pass) detail = why;
        pass = false;
    }
};

struct BautinTuple {
    Rational l2, l3, l4, l5, l6;
};

PlanarField bautin(const BautinTuple &b) {
    return catalog_get("bautin", {{"l2", b.l2}, {"l3", b.l3}, {"l4", b.l4}, {"l5", b.l5}, {"l6", b.l6}}).field;
}

std::string show(const BautinTuple &b) {
    return "(" + b.l2.str() + ", " + b.l3.str() + ", " + b.l4.str() + ", " + b.l5.str() + ", " + b.l6.str() + ")";
}

// Shared between criteria 1, 3 and 9.
std::vector<BautinTuple> bautin_instances() {
    Rng rng(1001);
    std::vector<BautinTuple> out;
    for (int t = 0; t < 100; ++t)
        out.push_back({random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng),
                       random_rational(rng)});
    return out;
}

std::vector<std::map<std::string, Rational>> cubic_instances() {
    Rng rng(1003);
    std::vector<std::map<std::string, Rational>> out;
    for (int t = 0; t < 100; ++t) {
        std::map<std::string, Rational> p;
        for (const char *k : {"A", "B", "C", "D", "K", "L", "M", "N"}) p[k] = random_rational(rng);
        out.push_back(p);
    }
    return out;
}

Outcome bautin_first_constant() {
    Outcome o;
    for (const auto &b : bautin_instances()) {
        auto r = compute_lyapunov(bautin(b), 2);
        Rational want = b.l5 * (b.l3 - b.l6) / Rational(8);
        if (r.v_list.at(0) != want) o.fail("l = " + show(b) + ": V1 = " + r.v_list[0].str() + ", expected " + want.str());
    }
    return o;
}

Outcome bautin_center_cases() {
    Outcome o;
    Rng rng(1005);
    for (int kase = 1; kase <= 4; ++kase) {
        for (int t = 0; t < 25; ++t) {
            BautinTuple b{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng),
                          random_rational(rng)};
            switch (kase) {
            case 1: b.l4 = b.l5 = Rational(0); break;
            case 2: b.l2 = b.l5 = Rational(0); break;
            case 3: b.l3 = b.l6; break;
            case 4:
                b.l6 = random_nonzero(rng);
                b.l3 = (b.l2 * b.l2 + Rational(2) * b.l6 * b.l6) / b.l6;
                b.l5 = Rational(0);
                b.l4 = Rational(-5) * (b.l3 - b.l6);
                break;
            }
            if (!bautin_classify(b.l2, b.l3, b.l4, b.l5, b.l6).count(kase)) o.fail("case generator broken for " + roman(kase));
            auto r = compute_lyapunov(bautin(b), 6);
            if (r.v_list.size() != 3 || r.first_nonzero() != 0)
                o.fail("case " + roman(kase) + " l = " + show(b) + ": " + r.verdict.str());
        }
    }
    return o;
}

Outcome cubic_first_constant() {
    Outcome o;
    for (const auto &p : cubic_instances()) {
        PlanarField f = catalog_get("cubic_qh", p).field;
        auto r = compute_lyapunov(f, 6);
        Rational want = (Rational(3) * (p.at("A") + p.at("N")) + p.at("L") + p.at("C")) / Rational(8);
        if (r.v_list.at(0) != want) o.fail("V1 = " + r.v_list[0].str() + ", expected " + want.str());
        auto q = constants_quasihomogeneous(f, 6);
        if (q.v_list != r.v_list) o.fail("quasi-homogeneous path disagrees for " + f.p().str() + ", " + f.q().str());
    }
    return o;
}

Outcome published_examples() {
    Outcome o;
    for (const char *name : {"quartic_uuu", "quartic_ttt", "quintic_ssss"}) {
        PlanarField f = catalog_get(name).analysis_field();
        auto r = compute_lyapunov(f, 6);
        if (r.first_nonzero() != 0) {
            std::ostringstream os;
            os << name << ": V" << r.first_nonzero() << " = " << r.v_list[r.first_nonzero() - 1];
            o.fail(os.str());
        }
        for (double c : {0.05, 0.1, 0.2}) {
            double d = return_map(f, c).delta;
            if (!(std::abs(d) < 1e-8 * c)) {
                std::ostringstream os;
                os << name << ": |P(c) - c| = " << std::abs(d) << " at c = " << c;
                o.fail(os.str());
            }
        }
    }
    bool found = false;
    for (const auto &p : find_equilibria(catalog_get("quartic_uuu").field, {-2, 2, -2, 2}))
        found = found || (std::abs(p[0] + 1.324718) < 1e-6 && std::abs(p[1] - 1) < 1e-6);
    if (!found) o.fail("quartic_uuu: no equilibrium near (-1.324718, 1)");
    return o;
}

Outcome homological_round_trip() {
    Outcome o;
    Rng rng(1007);
    for (int t = 0; t < 200; ++t) {
        const int n = uniform_int(rng, 2, 12);
        BiPoly g = random_homogeneous(rng, n);
        auto s = solve_homological(HomogeneousPoly(n, g));
        BiPoly lhs = apply_rotational(s.f.poly());
        if (n % 2 == 0) lhs += BiPoly::r2pow(n / 2) * s.k_const;
        if (lhs != g) o.fail("round trip broken at degree " + std::to_string(n));
        if (n % 2 == 1 && !s.k_const.is_zero()) o.fail("K != 0 at odd degree " + std::to_string(n));
    }
    return o;
}

Outcome darboux_certificates() {
    Outcome o;
    Rng rng(1009);
    const std::vector<Rational> lambdas = {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1), Rational(2)};
    for (int t = 0; t < 50; ++t) {
        const int m = 2 + t % 4;
        const Rational lam = lambdas[(t / 4) % lambdas.size()];
        auto w = weak_center_family(m, lam, HomogeneousPoly(m - 1, random_homogeneous(rng, m - 1, 5)));
        if (!verify_darboux(w.field, w.candidate)) o.fail("certificate rejected, m = " + std::to_string(m) + ", lambda = " + lam.str());
        auto r = compute_lyapunov(w.field, 10);
        if (r.first_nonzero() != 0) o.fail("m = " + std::to_string(m) + ", lambda = " + lam.str() + ": " + r.verdict.str());
    }
    return o;
}

Outcome isochrony() {
    Outcome o;
    constexpr double two_pi = 2 * std::numbers::pi;
    auto check = [&](const std::string &label, const PlanarField &f) {
        for (double c : {0.05, 0.1, 0.2}) {
            double err = std::abs(period(f, c).period - two_pi);
            if (!(err < 1e-8)) {
                std::ostringstream os;
                os << label << ": |T - 2pi| = " << err << " at c = " << c;
                o.fail(os.str());
            }
        }
    };
    check("chava56", catalog_get("chava56", {{"a", 1}, {"b", 0}}).field);
    Rng rng(1011);
    for (int t = 0; t < 5; ++t) {
        auto w = weak_center_family(3, Rational(1, 2), HomogeneousPoly(2, random_homogeneous(rng, 2, 3)));
        check("cubic family " + w.candidate.g.str(), w.field);
    }
    return o;
}

Outcome sign_oracle() {
    Outcome o;
    Rng rng(1013);
    std::vector<PlanarField> fields;
    while (fields.size() < 19) {
        BautinTuple b{random_rational(rng, 5), random_rational(rng, 5), random_rational(rng, 5), random_nonzero(rng, 5),
                      random_rational(rng, 5)};
        if (b.l3 == b.l6) continue;
        fields.push_back(bautin(b));
    }
    const BiPoly x = BiPoly::x(), y = BiPoly::y(), r2 = BiPoly::r2pow(1);
    const PlanarField radial(-y + x * r2, x + y * r2);
    fields.push_back(radial);
    for (const auto &f : fields) {
        auto r = compute_lyapunov(f, 2);
        if (r.first_nonzero() != 1) {
            o.fail("no nonzero V1 for " + f.p().str());
            continue;
        }
        const int want = r.v_list[0].sign();
        const double d = return_map(f, 0.05).delta;
        if ((d > 0 ? 1 : d < 0 ? -1 : 0) != want) {
            std::ostringstream os;
            os << "P(c) - c = " << d << " but V1 = " << r.v_list[0] << " for " << f.p() << ", " << f.q();
            o.fail(os.str());
        }
    }
    const double closed = 0.1 / std::sqrt(1 - 4 * std::numbers::pi * 0.01);
    const double got = return_map(radial, 0.1).p_of_c;
    if (!(std::abs(got - closed) < 1e-8)) {
        std::ostringstream os;
        os.precision(12);
        os << "radial cubic P(0.1) = " << got << ", closed form " << closed;
        o.fail(os.str());
    }
    return o;
}

Outcome gauge_independence() {
    Outcome o;
    Rng rng(1015);
    auto probe = [&](const PlanarField &f) {
        auto base = compute_lyapunov(f, 6);
        const int k = base.first_nonzero();
        for (int t = 0; t < 5; ++t) {
            LyapunovOptions opts;
            for (int n = 4; n <= 8; n += 2) opts.gauges[n] = random_rational(rng);
            auto r = compute_lyapunov(f, 6, opts);
            if (r.first_nonzero() != k || (k > 0 && r.v_list[k - 1] != base.v_list[k - 1]))
                o.fail("gauge changed the first constant of " + f.p().str() + ", " + f.q().str());
        }
    };
    for (const auto &b : bautin_instances()) probe(bautin(b));
    for (const auto &p : cubic_instances()) probe(catalog_get("cubic_qh", p).field);
    return o;
}

Outcome hamiltonian_round_trip() {
    Outcome o;
    Rng rng(1017);
    for (int t = 0; t < 100; ++t) {
        InverseSpec s = random_hamiltonian_spec(rng, uniform_int(rng, 2, 5));
        if (!divergence_condition(s).is_zero()) {
            o.fail("generator produced a non-Hamiltonian spec");
            continue;
        }
        PlanarField f = build_field(s);
        if (!f.divergence().is_zero()) o.fail("div != 0 for " + f.p().str() + ", " + f.q().str());
        auto H = hamiltonian_of(f);
        if (!H || !f.lie_derivative(*H).is_zero()) {
            o.fail("H not conserved for " + f.p().str() + ", " + f.q().str());
            continue;
        }
        // The start must lie inside the period annulus; halve it until the orbit
        // stays bounded.
        Trajectory tr;
        for (double c = 0.1; tr.empty() && c > 1e-3; c /= 2) {
            try {
                tr = integrate(f, c, 0.0, 100.0);
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::StepFailure) throw;
            }
        }
        if (tr.empty()) {
            o.fail("no bounded orbit near the origin for " + f.p().str() + ", " + f.q().str());
            continue;
        }
        const double h0 = H->evaluate(tr.front().x, tr.front().y);
        double worst = 0;
        for (const auto &p : tr) worst = std::max(worst, std::abs(H->evaluate(p.x, p.y) - h0));
        if (!(worst < 1e-9)) {
            std::ostringstream os;
            os << "energy drift " << worst << " for " << f.p() << ", " << f.q();
            o.fail(os.str());
        }
    }
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Bautin V1 identity", bautin_first_constant},
        {"Bautin center cases", bautin_center_cases},
        {"cubic first constant", cubic_first_constant},
        {"quartic and quintic examples", published_examples},
        {"homological round trip", homological_round_trip},
        {"Darboux certificates", darboux_certificates},
        {"isochrony", isochrony},
        {"sign oracle", sign_oracle},
        {"gauge independence", gauge_independence},
        {"Hamiltonian round trip", hamiltonian_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first;
        std::cout.precision(2);
        std::cout << " [" << std::fixed << secs << "s]";
        std::cout.unsetf(std::ios::fixed);
        std::cout.precision(6);
        if (!o.detail.empty()) std::cout << "  " << o.detail;
        std::cout << std::endl;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
