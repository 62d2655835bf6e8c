#pragma once

#include "cfocus/bipoly.hpp"
#include "cfocus/lyapunov.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfocus {

struct InverseSpec {
    int m = 2;
    // h[j] = H_j for j = 0..m+1; entries 0 and 1 unused, h[2] = (x^2+y^2)/2.
    std::vector<BiPoly> h;
    // g[k] = g_k for k = 0..m-1; g[0] is conventionally 1.
    std::vector<BiPoly> g;

    // Spec of degree m with H_2 set, everything else zero and g_0 = 1.
    static InverseSpec blank(int m);
    // Psi_j = H_2 + ... + H_j
    BiPoly psi(int j) const;
    void validate() const;
};

PlanarField build_field(const InverseSpec &spec);
// sum_{j=2}^{m+1} {Psi_j, g_{m+1-j}}; zero iff build_field(spec) is Hamiltonian.
BiPoly divergence_condition(const InverseSpec &spec);
// Entry n - m (n = m..up_to) is the degree n+1 part of X(V), with V the
// prescribed Psi_{m+1} continued by the forward recursion.
std::vector<BiPoly> complementary_residuals(const InverseSpec &spec, int up_to);

struct DarbouxCandidate {
    enum class Form { Power, Exponential, Rational };
    BiPoly g;
    Rational lambda;
    Form form = Form::Power;

    // Closed form of the first integral, for reports.
    std::string describe() const;
};

const char *form_name(DarbouxCandidate::Form f);
DarbouxCandidate make_candidate(const BiPoly &g, const Rational &lambda, int m);

// H_{m+1} = -lambda H_2 g (+ nu H_2^{(m+1)/2} for odd m), g_{m-1} = g.
InverseSpec weak_center_spec(int m, const Rational &lambda, const HomogeneousPoly &g, const Rational &nu = Rational(0));

struct WeakCenterField {
    PlanarField field;
    DarbouxCandidate candidate;
};

WeakCenterField weak_center_family(int m, const Rational &lambda, const HomogeneousPoly &g);

struct CofactorCertificate {
    BiPoly curve;
    BiPoly cofactor;
};

// Exact division of a by b; absent when the remainder is nonzero.
std::optional<BiPoly> exact_divide(const BiPoly &a, const BiPoly &b);
std::optional<CofactorCertificate> find_cofactor(const PlanarField &field, const BiPoly &curve);
bool verify_certificate(const PlanarField &field, const CofactorCertificate &cert);
bool verify_darboux(const PlanarField &field, const DarbouxCandidate &cand);

struct DevlinIntegral {
    BiPoly numerator;
    BiPoly denominator;
    int m = 0;
};

DevlinIntegral devlin_integral(const PlanarField &field);
bool verify_devlin(const PlanarField &field, const DevlinIntegral &f);

} // namespace cfocus
