#include "cfocus/catalog.hpp"
#include "cfocus/error.hpp"
#include "cfocus/inverse.hpp"
#include "cfocus/numeric.hpp"
#include "cfocus/structure.hpp"
#include "support/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace cfocus;
using namespace cfocus::testing;

namespace {

const BiPoly X = BiPoly::x(), Y = BiPoly::y();
constexpr double kTwoPi = 2 * std::numbers::pi;

PlanarField linear() { return PlanarField(-Y, X); }

PlanarField radial_cubic() {
    BiPoly r2 = BiPoly::r2pow(1);
    return PlanarField(-Y + X * r2, X + Y * r2);
}

// dr/dtheta = r^3 from r(0) = c, after one turn
double radial_closed_form(double c) { return c / std::sqrt(1 - 4 * std::numbers::pi * c * c); }

} // namespace

TEST(Integrate, LinearRotation) {
    Trajectory tr = integrate(linear(), 1.0, 0.0, kTwoPi);
    ASSERT_FALSE(tr.empty());
    EXPECT_NEAR(tr.back().t, kTwoPi, 1e-12);
    EXPECT_NEAR(tr.back().x, 1.0, 1e-10);
    EXPECT_NEAR(tr.back().y, 0.0, 1e-10);
}

TEST(Integrate, CsvExport) {
    Trajectory tr = integrate(linear(), 0.5, 0.0, 0.3);
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    std::string s = os.str();
    EXPECT_EQ(s.rfind("t,x,y\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), tr.size() + 1);
}

TEST(Integrate, UnclosedOrbitOfQuarticStaysBounded) {
    Trajectory tr = integrate(catalog_get("quartic_uuu").field, 0.2, 0.0, 200.0);
    double rmax = 0;
    for (const auto &p : tr) rmax = std::max(rmax, std::hypot(p.x, p.y));
    EXPECT_LT(rmax, 0.21);
    EXPECT_GT(rmax, 0.19);
}

TEST(Integrate, Errors) {
    IntegratorConfig cfg;
    cfg.rel_tol = 0.5;
    EXPECT_THROW(integrate(linear(), 1, 0, 1, cfg), Error);
    try {
        integrate(linear(), 1, 0, 2e4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::TimeBudgetExceeded);
    }
    // x' = x^2 blows up at t = 1
    try {
        integrate(PlanarField(X * X, BiPoly()), 1, 0, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::StepFailure);
    }
}

TEST(ReturnMap, LinearField) {
    ReturnMapSample s = return_map(linear(), 0.3);
    EXPECT_NEAR(s.delta, 0.0, 1e-11);
    EXPECT_NEAR(s.theta_total, kTwoPi, 1e-9);
    EXPECT_NEAR(s.time, kTwoPi, 1e-10);
}

TEST(ReturnMap, RadialCubicClosedForm) {
    for (double c : {0.05, 0.1, 0.15}) {
        ReturnMapSample s = return_map(radial_cubic(), c);
        EXPECT_NEAR(s.p_of_c, radial_closed_form(c), 1e-8) << c;
        EXPECT_NEAR(s.theta_total, kTwoPi, 1e-9);
        EXPECT_GT(s.delta, 0);
    }
}

TEST(ReturnMap, BautinSignFollowsFirstConstant) {
    // V_1 = -1/4 here; the displacement is about 2 pi V_1 c^3
    PlanarField f = catalog_get("bautin", {{"l3", 1}, {"l5", 2}}).field;
    ReturnMapSample s = return_map(f, 0.05);
    EXPECT_LT(s.delta, 0);
    EXPECT_NEAR(s.delta / (kTwoPi * -0.25 * std::pow(0.05, 3)), 1.0, 0.1);
}

TEST(ReturnMap, AngleStalled) {
    // beyond the saddle at (-1, 0) the orbit of x' = -y, y' = x + x^2 turns back
    PlanarField f(-Y, X + X * X);
    try {
        return_map(f, 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::AngleStalled);
    }
    EXPECT_THROW(return_map(linear(), -1.0), Error);
}

TEST(Period, LinearAndUniformlyIsochronous) {
    EXPECT_NEAR(period(linear(), 0.7).period, kTwoPi, 1e-10);
    PlanarField chava = catalog_get("chava56", {{"a", 1}}).field;
    for (double c : {0.05, 0.1, 0.2}) EXPECT_NEAR(period(chava, c).period, kTwoPi, 1e-8);
}

TEST(Period, LoudIsochronousQuadratics) {
    for (const char *name : {"loud1", "loud2", "loud3", "loud4"}) {
        CatalogEntry e = catalog_get(name);
        ASSERT_TRUE(e.clockwise);
        for (double c : {0.05, 0.1}) EXPECT_NEAR(period(e.analysis_field(), c).period, kTwoPi, 1e-6) << name;
    }
}

TEST(Period, NonIsochronousCenterDiffers) {
    // x' = -y, y' = x + x^2: period grows with amplitude
    EXPECT_GT(std::abs(period(PlanarField(-Y, X + X * X), 0.2).period - kTwoPi), 1e-3);
}

TEST(Equilibria, Examples) {
    auto lin = find_equilibria(linear(), {-2, 2, -2, 2});
    ASSERT_EQ(lin.size(), 1u);
    EXPECT_NEAR(lin[0][0], 0, 1e-12);
    EXPECT_NEAR(lin[0][1], 0, 1e-12);

    auto q = find_equilibria(PlanarField(-Y, X + X * X), {-2, 2, -2, 2});
    ASSERT_EQ(q.size(), 2u);
    EXPECT_NEAR(q[0][0], -1, 1e-10);
    EXPECT_NEAR(q[1][0], 0, 1e-10);

    CatalogEntry uuu = catalog_get("quartic_uuu");
    auto pts = find_equilibria(uuu.field, {-2, 2, -2, 2});
    bool found = false;
    for (const auto &p : pts) {
        auto v = FieldEvaluator(uuu.field)(p[0], p[1]);
        EXPECT_LT(std::abs(v[0]), 1e-10);
        EXPECT_LT(std::abs(v[1]), 1e-10);
        if (std::abs(p[0] + 1.324718) < 1e-6 && std::abs(p[1] - 1) < 1e-9) found = true;
    }
    EXPECT_TRUE(found);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            EXPECT_GT(std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]), 1e-6);
    EXPECT_THROW(find_equilibria(linear(), {1, 0, 0, 1}), Error);
}

TEST(Classify, Examples) {
    auto v = numeric_classify(radial_cubic(), {0.05, 0.1});
    EXPECT_EQ(v.kind, NumericVerdict::Kind::FocusLike);
    EXPECT_EQ(v.str(), "FocusLike(+)");
    EXPECT_EQ(numeric_classify(catalog_get("quintic_ssss").field, {0.05, 0.1}).kind, NumericVerdict::Kind::CenterLike);
    EXPECT_EQ(numeric_classify(linear(), {0.1}).str(), "CenterLike");
    EXPECT_THROW(numeric_classify(linear(), {}), Error);
}

TEST(Classify, QuarticTttDisplacementMatchesThirdConstant) {
    // V_3 = 3/32 for a = 1; the displacement is about 2 pi V_3 c^7
    auto v = numeric_classify(catalog_get("quartic_ttt").field, {0.05, 0.1, 0.2});
    EXPECT_EQ(v.kind, NumericVerdict::Kind::FocusLike);
    EXPECT_EQ(v.sign, 1);
    const double pred = kTwoPi * 3.0 / 32.0 * std::pow(0.2, 7);
    EXPECT_NEAR(v.samples.back().delta / pred, 1.0, 0.2);
}

TEST(OracleAgreement, RandomFociMatchSymbolicSign) {
    Rng rng(111);
    int checked = 0;
    for (int t = 0; t < 40 && checked < 15; ++t) {
        PlanarField f = random_field(rng, 3, 3, 0.5);
        auto r = compute_lyapunov(f, 4);
        if (r.first_nonzero() != 1) continue;
        int sign = r.v_list[0].sign();
        for (double c : {0.02, 0.04}) {
            ReturnMapSample s = return_map(f, c);
            EXPECT_EQ(s.delta > 0 ? 1 : -1, sign) << "c=" << c;
        }
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(EnergyDrift, HamiltonianFixtures) {
    Rng rng(113);
    for (int t = 0; t < 5; ++t) {
        InverseSpec s = random_hamiltonian_spec(rng, uniform_int(rng, 2, 4), 3);
        PlanarField f = build_field(s);
        auto H = hamiltonian_of(f);
        ASSERT_TRUE(H.has_value());
        Trajectory tr = integrate(f, 0.1, 0.0, 100.0);
        double h0 = H->evaluate(tr.front().x, tr.front().y), worst = 0;
        for (const auto &p : tr) worst = std::max(worst, std::abs(H->evaluate(p.x, p.y) - h0));
        EXPECT_LT(worst, 1e-9 * (1 + std::abs(h0)));
    }
}

TEST(TruncatedV, DecayRate) {
    // Fields whose computed constants vanish through order N but which are not
    // centers: the change of the truncated V over one turn scales like c^{N+2}
    // (the first constant beyond the order sits one degree higher for odd N).
    struct Case {
        PlanarField field;
        int order;
    };
    std::vector<Case> cases = {
        {catalog_get("quartic_uuu").field, 5},
        {catalog_get("quartic_ttt").field, 5},
        {catalog_get("cubic_qh", {{"A", 1}, {"B", 1}, {"N", -1}, {"L", 2}, {"C", -2}}).field, 3},
    };
    for (const auto &cs : cases) {
        auto r = compute_lyapunov(cs.field, cs.order);
        ASSERT_EQ(r.first_nonzero(), 0);
        ASSERT_NE(compute_lyapunov(cs.field, cs.order + 1).first_nonzero(), 0);
        BiPoly V = lyapunov_function(r);
        auto jump = [&](double c) {
            ReturnMapSample s = return_map(cs.field, c);
            return std::abs(V.evaluate(s.p_of_c, 0) - V.evaluate(c, 0));
        };
        const double c = 0.2;
        double ratio = jump(c) / jump(c / 2), expect = std::pow(2.0, cs.order + 2);
        EXPECT_GT(ratio, expect / 4) << "order " << cs.order;
        EXPECT_LT(ratio, expect * 4) << "order " << cs.order;
    }
}
