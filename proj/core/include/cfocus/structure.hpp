#pragma once

#include "cfocus/bipoly.hpp"
#include "cfocus/error.hpp"
#include "cfocus/lyapunov.hpp"

#include <optional>
#include <set>

namespace cfocus {

// X = -h_y - y g,  Y = h_x + x g
struct HGDecomposition {
    BiPoly h;
    BiPoly g;
};

class ObstructionError : public Error {
public:
    ObstructionError(int degree, Rational value)
      : Error(ErrorKind::ObstructionNonzeroAverage,
              "divergence component of degree " + std::to_string(degree) + " has average " + value.str())
      , degree_(degree)
      , value_(std::move(value)) {}

    int degree() const { return degree_; }
    const Rational &value() const { return value_; }

private:
    int degree_;
    Rational value_;
};

HGDecomposition hg_decompose(const PlanarField &field);
PlanarField field_from_hg(const HGDecomposition &hg);

struct WeakCenterResult {
    // (x^2+y^2) div = mu (xX + yY)
    Rational mu;
    // circle averages of every component of xX + yY vanish
    bool integral_ok = false;
    // circle averages of every component of the divergence vanish
    bool divergence_average_ok = false;
    // m even, or m = 2k-1 with mu != 2k
    bool parity_ok = false;
    std::optional<Rational> lambda_darboux;
};

std::optional<WeakCenterResult> weak_center_check(const PlanarField &field);

struct SymmetryReport {
    bool rev_x_axis = false;
    bool rev_y_axis = false;
    bool cauchy_riemann = false;
    bool hamiltonian = false;
};

// Complex coefficients a(n,k) of z' = i z + sum a(n,k) z^n zbar^k.
ComplexCoeffs complex_field_coefficients(const PlanarField &field);
SymmetryReport detect_symmetries(const PlanarField &field);

// H with P = -H_y, Q = H_x when div = 0; absent otherwise.
std::optional<BiPoly> hamiltonian_of(const PlanarField &field);

// Case numbers 1..4 (i..iv).
std::set<int> bautin_classify(const Rational &l2, const Rational &l3, const Rational &l4, const Rational &l5,
                              const Rational &l6);
// Case numbers 1..3 (i..iii).
std::set<int> schlomiuk_classify(const Rational &a, const Rational &b, const Rational &c, const Rational &k,
                                 const Rational &l, const Rational &m);

std::string roman(int n);

} // namespace cfocus
