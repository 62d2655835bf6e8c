#include "cfocus/numeric.hpp"
#include "cfocus/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace cfocus {

void IntegratorConfig::validate() const {
    auto bad_tol = [](double v) { return !(v > 0.0 && v <= 1e-2); };
    if (bad_tol(rel_tol) || bad_tol(abs_tol))
        throw Error(ErrorKind::InvalidArgument, "tolerances must lie in (0, 1e-2]");
    if (!(max_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "max_step must be positive");
    if (!(max_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "max_time must be positive");
}

FieldEvaluator::FieldEvaluator(const PlanarField &field)
  : degree_(std::max(field.degree(), 0)) {
    auto conv = [](const BiPoly &p) {
        std::vector<Term> out;
        for (const auto &[m, c] : p.terms()) out.push_back({m.i, m.j, c.to_double()});
        return out;
    };
    p_ = conv(field.p());
    q_ = conv(field.q());
    px_ = conv(field.p().dx());
    py_ = conv(field.p().dy());
    qx_ = conv(field.q().dx());
    qy_ = conv(field.q().dy());
}

void FieldEvaluator::powers(double x, double y, std::vector<double> &xp, std::vector<double> &yp) const {
    xp.assign(degree_ + 1, 1.0);
    yp.assign(degree_ + 1, 1.0);
    for (int k = 1; k <= degree_; ++k) {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
    }
}

double FieldEvaluator::eval(const std::vector<Term> &terms, const std::vector<double> &xp,
                            const std::vector<double> &yp) {
    double acc = 0.0;
    for (const auto &t : terms) acc += t.c * xp[t.i] * yp[t.j];
    return acc;
}

std::array<double, 2> FieldEvaluator::operator()(double x, double y) const {
    thread_local std::vector<double> xp, yp;
    powers(x, y, xp, yp);
    return {eval(p_, xp, yp), eval(q_, xp, yp)};
}

std::array<double, 4> FieldEvaluator::jacobian(double x, double y) const {
    thread_local std::vector<double> xp, yp;
    powers(x, y, xp, yp);
    return {eval(px_, xp, yp), eval(py_, xp, yp), eval(qx_, xp, yp), eval(qy_, xp, yp)};
}

namespace {

using Vec = std::array<double, 2>;

Vec axpy(const Vec &y, double h, std::initializer_list<std::pair<double, const Vec *>> ks) {
    Vec out = y;
    for (const auto &[a, k] : ks) {
        out[0] += h * a * (*k)[0];
        out[1] += h * a * (*k)[1];
    }
    return out;
}

// Dormand-Prince 5(4) with FSAL and the Hairer dense output.
class Dopri5 {
public:
    Dopri5(const PlanarField &field, const IntegratorConfig &cfg)
      : f_(field)
      , cfg_(cfg) {
        cfg_.validate();
    }

    struct Step {
        Vec y1;
        Vec k7;
        double err;
        std::array<Vec, 5> rc;
    };

    Vec rhs(const Vec &y) const { return f_(y[0], y[1]); }
    const FieldEvaluator &field() const { return f_; }

    Step attempt(const Vec &y, const Vec &k1, double h) const {
        constexpr double a21 = 1.0 / 5.0;
        constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                         a54 = -212.0 / 729.0;
        constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                         a65 = -5103.0 / 18656.0;
        constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                         b6 = 11.0 / 84.0;
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                         e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
        constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                         d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                         d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

        Vec k2 = rhs(axpy(y, h, {{a21, &k1}}));
        Vec k3 = rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        Vec k4 = rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        Vec k5 = rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        Vec k6 = rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        Step s;
        s.y1 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        s.k7 = rhs(s.y1);

        double sq = 0.0;
        for (int i = 0; i < 2; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * s.k7[i]);
            double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(s.y1[i]));
            sq += (e / sc) * (e / sc);
        }
        s.err = std::sqrt(sq / 2.0);

        for (int i = 0; i < 2; ++i) {
            double ydiff = s.y1[i] - y[i];
            double bspl = h * k1[i] - ydiff;
            s.rc[0][i] = y[i];
            s.rc[1][i] = ydiff;
            s.rc[2][i] = bspl;
            s.rc[3][i] = ydiff - h * s.k7[i] - bspl;
            s.rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * s.k7[i]);
        }
        return s;
    }

    static Vec dense(const Step &s, double theta) {
        double theta1 = 1.0 - theta;
        Vec out;
        for (int i = 0; i < 2; ++i)
            out[i] = s.rc[0][i] +
                     theta * (s.rc[1][i] + theta1 * (s.rc[2][i] + theta * (s.rc[3][i] + theta1 * s.rc[4][i])));
        return out;
    }

    double next_h(double h, double err) const {
        double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        return std::min(h * fac, cfg_.max_step);
    }

    const IntegratorConfig &cfg() const { return cfg_; }

private:
    FieldEvaluator f_;
    IntegratorConfig cfg_;
};

// Drives accepted steps; `on_step(t0, y0, h, step)` returns false to stop.
template<typename OnStep>
void drive(Dopri5 &rk, Vec y, double t_limit, OnStep on_step) {
    const auto &cfg = rk.cfg();
    double t = 0.0;
    double h = std::min(cfg.max_step, 1e-2);
    Vec k1 = rk.rhs(y);
    while (true) {
        if (t >= t_limit) return;
        double hh = std::min(h, t_limit - t);
        Dopri5::Step s = rk.attempt(y, k1, hh);
        if (!std::isfinite(s.err)) {
            h = hh * 0.2;
        } else if (s.err <= 1.0) {
            if (std::hypot(s.y1[0], s.y1[1]) > cfg.escape_radius || !std::isfinite(s.y1[0]) ||
                !std::isfinite(s.y1[1])) {
                std::ostringstream msg;
                msg << "solution escaped radius " << cfg.escape_radius << " at t = " << t + hh;
                throw Error(ErrorKind::StepFailure, msg.str());
            }
            bool more = on_step(t, y, hh, s);
            t += hh;
            y = s.y1;
            k1 = s.k7;
            if (!more) return;
            h = rk.next_h(hh, s.err);
        } else {
            h = std::max(0.2, 0.9 * std::pow(s.err, -0.2)) * hh;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream msg;
            msg << "step size underflow at t = " << t;
            throw Error(ErrorKind::StepFailure, msg.str());
        }
    }
}

double angular_rate(const FieldEvaluator &f, const Vec &y) {
    Vec v = f(y[0], y[1]);
    return (y[0] * v[1] - y[1] * v[0]) / (y[0] * y[0] + y[1] * y[1]);
}

struct Crossing {
    double time;
    Vec state;
    double theta_total;
};

Crossing first_return(const PlanarField &field, double c, const IntegratorConfig &cfg) {
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "c must be positive");
    Dopri5 rk(field, cfg);
    if (!(angular_rate(rk.field(), {c, 0.0}) > 0.0))
        throw Error(ErrorKind::AngleStalled, "angular velocity is not positive at the start point");

    double theta = 0.0;
    std::optional<Crossing> found;
    drive(rk, {c, 0.0}, cfg.max_time, [&](double t0, const Vec &y0, double h, const Dopri5::Step &s) {
        const Vec &y1 = s.y1;
        if (!(angular_rate(rk.field(), y1) > 0.0)) {
            std::ostringstream msg;
            msg << "angular velocity changed sign near (" << y1[0] << ", " << y1[1] << ")";
            throw Error(ErrorKind::AngleStalled, msg.str());
        }
        double dtheta = std::atan2(y0[0] * y1[1] - y0[1] * y1[0], y0[0] * y1[0] + y0[1] * y1[1]);
        bool crossing = theta + dtheta > std::numbers::pi && y0[1] < 0.0 && y1[1] >= 0.0;
        if (!crossing) {
            theta += dtheta;
            return true;
        }
        // bisection on the dense output for y = 0
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi);
            (Dopri5::dense(s, mid)[1] < 0.0 ? lo : hi) = mid;
        }
        // Newton on real steps from the last accepted state
        double hs = 0.5 * (lo + hi) * h;
        Vec ys = Dopri5::dense(s, 0.5 * (lo + hi));
        Vec k1 = rk.rhs(y0);
        for (int it = 0; it < 8; ++it) {
            if (hs > 0.0) ys = rk.attempt(y0, k1, hs).y1;
            Vec v = rk.rhs(ys);
            if (v[1] == 0.0) break;
            double dh = -ys[1] / v[1];
            hs += dh;
            if (std::abs(dh) < 1e-13 * std::max(1.0, h)) {
                ys = rk.attempt(y0, k1, hs).y1;
                break;
            }
        }
        double last = std::atan2(y0[0] * ys[1] - y0[1] * ys[0], y0[0] * ys[0] + y0[1] * ys[1]);
        found = Crossing{t0 + hs, ys, theta + last};
        return false;
    });
    if (!found) throw Error(ErrorKind::TimeBudgetExceeded, "no return to the section before max_time");
    return *found;
}

} // namespace

Trajectory integrate(const PlanarField &field, double x0, double y0, double t_end, const IntegratorConfig &cfg) {
    if (t_end > cfg.max_time) throw Error(ErrorKind::TimeBudgetExceeded, "t_end exceeds max_time");
    if (!(t_end >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be nonnegative");
    Dopri5 rk(field, cfg);
    Trajectory out{{0.0, x0, y0}};
    drive(rk, {x0, y0}, t_end, [&](double t0, const Vec &, double h, const Dopri5::Step &s) {
        out.push_back({t0 + h, s.y1[0], s.y1[1]});
        return true;
    });
    if (!out.empty()) out.back().t = std::min(out.back().t, t_end);
    return out;
}

void write_trajectory_csv(std::ostream &os, const Trajectory &traj) {
    auto old = os.precision(17);
    os << "t,x,y\n";
    for (const auto &p : traj) os << p.t << ',' << p.x << ',' << p.y << '\n';
    os.precision(old);
}

ReturnMapSample return_map(const PlanarField &field, double c, const IntegratorConfig &cfg) {
    Crossing cr = first_return(field, c, cfg);
    if (!(cr.state[0] > 0.0)) throw Error(ErrorKind::AngleStalled, "return point is not on the positive x-axis");
    ReturnMapSample s;
    s.c = c;
    s.p_of_c = cr.state[0];
    s.theta_total = cr.theta_total;
    s.delta = s.p_of_c - c;
    s.time = cr.time;
    return s;
}

PeriodSample period(const PlanarField &field, double c, const IntegratorConfig &cfg) {
    Crossing cr = first_return(field, c, cfg);
    return {c, cr.time};
}

std::vector<std::array<double, 2>> find_equilibria(const PlanarField &field, const Box &box, int grid_n) {
    if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin) || grid_n < 1)
        throw Error(ErrorKind::InvalidArgument, "empty search box");
    FieldEvaluator f(field);
    const double dx = (box.xmax - box.xmin) / grid_n, dy = (box.ymax - box.ymin) / grid_n;
    const double slack = 1e-9 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
    std::vector<std::array<double, 2>> out;

    auto newton = [&](double x, double y) -> std::optional<std::array<double, 2>> {
        for (int it = 0; it < 60; ++it) {
            Vec v = f(x, y);
            if (std::abs(v[0]) < 1e-13 && std::abs(v[1]) < 1e-13) break;
            auto J = f.jacobian(x, y);
            double det = J[0] * J[3] - J[1] * J[2];
            if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
            double sx = (v[0] * J[3] - v[1] * J[1]) / det;
            double sy = (J[0] * v[1] - J[2] * v[0]) / det;
            x -= sx;
            y -= sy;
            if (!std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
        }
        Vec v = f(x, y);
        if (!(std::abs(v[0]) < 1e-10 && std::abs(v[1]) < 1e-10)) return std::nullopt;
        if (x < box.xmin - slack || x > box.xmax + slack || y < box.ymin - slack || y > box.ymax + slack)
            return std::nullopt;
        return std::array<double, 2>{x, y};
    };

    for (int a = 0; a < grid_n; ++a) {
        for (int b = 0; b < grid_n; ++b) {
            double x0 = box.xmin + a * dx, y0 = box.ymin + b * dy;
            double pmin = INFINITY, pmax = -INFINITY, qmin = INFINITY, qmax = -INFINITY;
            for (double sx : {0.0, 0.5, 1.0}) {
                for (double sy : {0.0, 0.5, 1.0}) {
                    Vec v = f(x0 + sx * dx, y0 + sy * dy);
                    pmin = std::min(pmin, v[0]);
                    pmax = std::max(pmax, v[0]);
                    qmin = std::min(qmin, v[1]);
                    qmax = std::max(qmax, v[1]);
                }
            }
            if (pmin > 0.0 || pmax < 0.0 || qmin > 0.0 || qmax < 0.0) continue;
            auto root = newton(x0 + 0.5 * dx, y0 + 0.5 * dy);
            if (!root) continue;
            bool dup = std::any_of(out.begin(), out.end(), [&](const auto &p) {
                return std::hypot(p[0] - (*root)[0], p[1] - (*root)[1]) < 1e-6;
            });
            if (!dup) out.push_back(*root);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string NumericVerdict::str() const {
    switch (kind) {
    case Kind::CenterLike: return "CenterLike";
    case Kind::FocusLike: return sign > 0 ? "FocusLike(+)" : "FocusLike(-)";
    case Kind::Inconsistent: return "Inconsistent";
    }
    return "?";
}

NumericVerdict numeric_classify(const PlanarField &field, const std::vector<double> &c_grid,
                                const IntegratorConfig &cfg, double tol) {
    if (c_grid.empty()) throw Error(ErrorKind::InvalidArgument, "c grid is empty");
    NumericVerdict v;
    double cmax = *std::max_element(c_grid.begin(), c_grid.end());
    v.tol = tol > 0.0 ? tol : 1e-9 * cmax;
    double worst = 0.0;
    bool pos = false, neg = false;
    for (double c : c_grid) {
        v.samples.push_back(return_map(field, c, cfg));
        double d = v.samples.back().delta;
        worst = std::max(worst, std::abs(d));
        if (d > 0.0) pos = true;
        if (d < 0.0) neg = true;
    }
    if (worst < v.tol) {
        v.kind = NumericVerdict::Kind::CenterLike;
    } else if (pos && neg) {
        v.kind = NumericVerdict::Kind::Inconsistent;
    } else {
        v.kind = NumericVerdict::Kind::FocusLike;
        v.sign = pos ? 1 : -1;
    }
    return v;
}

} // namespace cfocus
