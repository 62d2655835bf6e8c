#pragma once

#include "cfocus/lyapunov.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace cfocus {

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = 0.1;
    double max_time = 1e4;
    // |(x, y)| beyond this aborts the integration.
    double escape_radius = 1e6;

    void validate() const;
};

struct TrajectoryPoint {
    double t;
    double x;
    double y;
};

using Trajectory = std::vector<TrajectoryPoint>;

// Double-precision evaluator for a field, terms accumulated in graded order.
class FieldEvaluator {
public:
    explicit FieldEvaluator(const PlanarField &field);
    std::array<double, 2> operator()(double x, double y) const;
    // d(P, Q)/d(x, y) as {P_x, P_y, Q_x, Q_y}
    std::array<double, 4> jacobian(double x, double y) const;
    int degree() const { return degree_; }

private:
    struct Term {
        int i, j;
        double c;
    };
    static double eval(const std::vector<Term> &terms, const std::vector<double> &xp, const std::vector<double> &yp);
    void powers(double x, double y, std::vector<double> &xp, std::vector<double> &yp) const;

    std::vector<Term> p_, q_, px_, py_, qx_, qy_;
    int degree_ = 0;
};

Trajectory integrate(const PlanarField &field, double x0, double y0, double t_end, const IntegratorConfig &cfg = {});
void write_trajectory_csv(std::ostream &os, const Trajectory &traj);

struct ReturnMapSample {
    double c = 0;
    double p_of_c = 0;
    double theta_total = 0;
    double delta = 0;
    double time = 0;
};

struct PeriodSample {
    double c = 0;
    double period = 0;
};

ReturnMapSample return_map(const PlanarField &field, double c, const IntegratorConfig &cfg = {});
PeriodSample period(const PlanarField &field, double c, const IntegratorConfig &cfg = {});

struct Box {
    double xmin, xmax, ymin, ymax;
};

std::vector<std::array<double, 2>> find_equilibria(const PlanarField &field, const Box &box, int grid_n = 64);

struct NumericVerdict {
    enum class Kind { CenterLike, FocusLike, Inconsistent };
    Kind kind = Kind::CenterLike;
    // common sign of P(c) - c for FocusLike
    int sign = 0;
    double tol = 0;
    std::vector<ReturnMapSample> samples;

    std::string str() const;
};

// tol <= 0 selects the default 1e-9 * max(c).
NumericVerdict numeric_classify(const PlanarField &field, const std::vector<double> &c_grid,
                                const IntegratorConfig &cfg = {}, double tol = 0);

} // namespace cfocus
