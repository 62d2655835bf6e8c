#pragma once

#include "cfocus/bipoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace cfocus {

// x' = P, y' = Q.  Analyses expect P = -y + X, Q = x + Y with X, Y of degree >= 2;
// the linear part is checked by the engines, not here.
class PlanarField {
public:
    PlanarField() = default;
    PlanarField(BiPoly p, BiPoly q);

    const BiPoly &p() const { return p_; }
    const BiPoly &q() const { return q_; }
    int degree() const;

    // Nonlinear parts (degree >= 2).
    BiPoly X() const { return p_.degree_range(2, p_.degree()); }
    BiPoly Y() const { return q_.degree_range(2, q_.degree()); }
    BiPoly X(int k) const { return p_.homogeneous_part(k); }
    BiPoly Y(int k) const { return q_.homogeneous_part(k); }

    bool is_normalized() const;
    void require_normalized() const;
    // Degree m if X and Y are both homogeneous of degree m, 1 for the linear
    // field, and -1 otherwise.
    int quasi_homogeneous_degree() const;

    // P f_x + Q f_y
    BiPoly lie_derivative(const BiPoly &f) const;
    BiPoly divergence() const { return p_.dx() + q_.dy(); }
    // t -> -t
    PlanarField reversed() const { return PlanarField(-p_, -q_); }

    friend bool operator==(const PlanarField &, const PlanarField &) = default;

private:
    BiPoly p_;
    BiPoly q_;
};

struct Verdict {
    enum class Kind { CenterCandidate, StableFocus, UnstableFocus };
    Kind kind = Kind::CenterCandidate;
    // N for CenterCandidate, k for the foci.
    int index = 0;

    std::string str() const;
    friend bool operator==(const Verdict &, const Verdict &) = default;
};

struct LyapunovResult {
    int order = 0;
    // H_3 .. H_{N+1}; h_list[i] has degree i + 3.
    std::vector<HomogeneousPoly> h_list;
    // V_1 .. V_{N/2}; v_list[i] multiplies (x^2+y^2)^{i+2}.
    std::vector<Rational> v_list;
    Verdict verdict;

    const BiPoly &H(int n) const;
    // Index (1-based) of the first nonzero constant, 0 if none.
    int first_nonzero() const;
};

struct LyapunovOptions {
    // Kernel component of H_n for even n, keyed by n.  Missing entries mean 0.
    std::map<int, Rational> gauges;
};

LyapunovResult compute_lyapunov(const PlanarField &field, int order, const LyapunovOptions &opts = {});
LyapunovResult constants_quasihomogeneous(const PlanarField &field, int order, const LyapunovOptions &opts = {});
BiPoly lyapunov_function(const LyapunovResult &result);
BiPoly residual(const PlanarField &field, const LyapunovResult &result);

Verdict verdict_from_constants(const std::vector<Rational> &v, int order);

} // namespace cfocus
