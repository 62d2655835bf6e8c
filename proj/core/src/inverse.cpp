#include "cfocus/inverse.hpp"
#include "cfocus/error.hpp"
#include "cfocus/homological.hpp"
#include "cfocus/structure.hpp"

namespace cfocus {

InverseSpec InverseSpec::blank(int m) {
    if (m < 2) throw Error(ErrorKind::DegreeMismatch, "inverse spec needs m >= 2");
    InverseSpec s;
    s.m = m;
    s.h.assign(m + 2, BiPoly());
    s.g.assign(m, BiPoly());
    s.h[2] = BiPoly::r2pow(1) * Rational(1, 2);
    s.g[0] = BiPoly(1);
    return s;
}

BiPoly InverseSpec::psi(int j) const {
    BiPoly out;
    for (int k = 2; k <= j && k < static_cast<int>(h.size()); ++k) out += h[k];
    return out;
}

void InverseSpec::validate() const {
    if (m < 2) throw Error(ErrorKind::DegreeMismatch, "inverse spec needs m >= 2");
    if (static_cast<int>(h.size()) != m + 2 || static_cast<int>(g.size()) != m)
        throw Error(ErrorKind::DegreeMismatch, "expected H_2..H_{m+1} and g_0..g_{m-1}");
    if (!(h[2] == BiPoly::r2pow(1) * Rational(1, 2))) throw Error(ErrorKind::DegreeMismatch, "H_2 must be (x^2+y^2)/2");
    for (int j = 3; j <= m + 1; ++j)
        if (!h[j].is_homogeneous_of(j))
            throw Error(ErrorKind::DegreeMismatch, "H_" + std::to_string(j) + " is not homogeneous of degree " +
                                                       std::to_string(j));
    for (int k = 0; k < m; ++k)
        if (!g[k].is_homogeneous_of(k))
            throw Error(ErrorKind::DegreeMismatch, "g_" + std::to_string(k) + " is not homogeneous of degree " +
                                                       std::to_string(k));
}

PlanarField build_field(const InverseSpec &spec) {
    spec.validate();
    const int m = spec.m;
    BiPoly p, q;
    BiPoly psi;
    for (int j = 2; j <= m + 1; ++j) {
        psi += spec.h[j];
        const BiPoly &gk = spec.g[m + 1 - j];
        if (gk.is_zero()) continue;
        // {Psi, x} = -Psi_y, {Psi, y} = Psi_x
        p -= gk * psi.dy();
        q += gk * psi.dx();
    }
    return PlanarField(p, q);
}

BiPoly divergence_condition(const InverseSpec &spec) {
    spec.validate();
    BiPoly out;
    BiPoly psi;
    for (int j = 2; j <= spec.m + 1; ++j) {
        psi += spec.h[j];
        out += poisson_bracket(psi, spec.g[spec.m + 1 - j]);
    }
    return out;
}

std::vector<BiPoly> complementary_residuals(const InverseSpec &spec, int up_to) {
    const PlanarField field = build_field(spec);
    const int m = spec.m;
    const int top = field.degree();
    std::vector<BiPoly> H(std::max(up_to + 2, m + 2));
    for (int j = 2; j <= m + 1; ++j) H[j] = spec.h[j];

    std::vector<BiPoly> out;
    for (int n = m; n <= up_to; ++n) {
        const int d = n + 1;
        BiPoly r;
        for (int j = 2; j <= d - 1; ++j) {
            int k = d + 1 - j;
            if (k < 2 || k > top || H[j].is_zero()) continue;
            r += H[j].dx() * field.X(k) + H[j].dy() * field.Y(k);
        }
        if (d > m + 1) H[d] = -solve_homological(HomogeneousPoly(d, r)).f.poly();
        out.push_back(r + apply_rotational(H[d]));
    }
    return out;
}

const char *form_name(DarbouxCandidate::Form f) {
    switch (f) {
    case DarbouxCandidate::Form::Power: return "Power";
    case DarbouxCandidate::Form::Exponential: return "Exponential";
    case DarbouxCandidate::Form::Rational: return "Rational";
    }
    return "?";
}

std::string DarbouxCandidate::describe() const {
    const std::string gs = "(" + g.str() + ")";
    switch (form) {
    case Form::Exponential: return "F = H2*exp(-" + gs + ")";
    case Form::Rational: {
        // lambda = 1/m: F^(m-1) = H2^(m-1) / (1 + (1-lambda) g)
        Rational m1 = Rational(1) / lambda - Rational(1);
        return "F = H2^" + m1.str() + " / (1 + " + (Rational(1) - lambda).str() + "*" + gs + ")";
    }
    case Form::Power:
        return "F = H2*(1 + " + (Rational(1) - lambda).str() + "*" + gs + ")^(" +
               (lambda / (lambda - Rational(1))).str() + ")";
    }
    return "";
}

DarbouxCandidate make_candidate(const BiPoly &g, const Rational &lambda, int m) {
    if (lambda.is_zero()) throw Error(ErrorKind::LambdaZero, "Darboux exponent must be nonzero");
    DarbouxCandidate c{g, lambda, DarbouxCandidate::Form::Power};
    if (lambda == Rational(1))
        c.form = DarbouxCandidate::Form::Exponential;
    else if (m > 1 && lambda == Rational(1, m))
        c.form = DarbouxCandidate::Form::Rational;
    return c;
}

InverseSpec weak_center_spec(int m, const Rational &lambda, const HomogeneousPoly &g, const Rational &nu) {
    if (lambda.is_zero()) throw Error(ErrorKind::LambdaZero, "lambda must be nonzero");
    if (m < 2) throw Error(ErrorKind::DegreeMismatch, "m must be >= 2");
    if (g.degree() != m - 1) throw Error(ErrorKind::DegreeMismatch, "g must have degree m-1");
    if (!nu.is_zero() && m % 2 == 0) throw Error(ErrorKind::InvalidArgument, "nu term needs odd m");
    InverseSpec s = InverseSpec::blank(m);
    s.h[m + 1] = -(s.h[2] * g.poly()) * lambda;
    if (!nu.is_zero()) s.h[m + 1] += s.h[2].pow(static_cast<unsigned>((m + 1) / 2)) * nu;
    s.g[m - 1] += g.poly();
    return s;
}

WeakCenterField weak_center_family(int m, const Rational &lambda, const HomogeneousPoly &g) {
    InverseSpec s = weak_center_spec(m, lambda, g);
    return {build_field(s), make_candidate(g.poly(), lambda, m)};
}

std::optional<BiPoly> exact_divide(const BiPoly &a, const BiPoly &b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroCurve, "division by the zero polynomial");
    const auto [lb, cb] = *b.terms().rbegin();
    BiPoly rem = a, quot;
    while (!rem.is_zero()) {
        const auto [lr, cr] = *rem.terms().rbegin();
        if (lr.i < lb.i || lr.j < lb.j) return std::nullopt;
        BiPoly t = BiPoly::monomial(lr.i - lb.i, lr.j - lb.j, cr / cb);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

std::optional<CofactorCertificate> find_cofactor(const PlanarField &field, const BiPoly &curve) {
    if (curve.is_zero()) throw Error(ErrorKind::ZeroCurve, "curve must be nonzero");
    auto k = exact_divide(field.lie_derivative(curve), curve);
    if (!k) return std::nullopt;
    return CofactorCertificate{curve, *k};
}

bool verify_certificate(const PlanarField &field, const CofactorCertificate &cert) {
    return field.lie_derivative(cert.curve) == cert.cofactor * cert.curve;
}

bool verify_darboux(const PlanarField &field, const DarbouxCandidate &cand) {
    const BiPoly H2 = BiPoly::r2pow(1) * Rational(1, 2);
    const BiPoly K = poisson_bracket(H2, cand.g);
    if (!(field.lie_derivative(H2) == H2 * K * cand.lambda)) return false;
    return field.lie_derivative(cand.g) == K * (BiPoly(1) + cand.g * (Rational(1) - cand.lambda));
}

DevlinIntegral devlin_integral(const PlanarField &field) {
    const int m = field.quasi_homogeneous_degree();
    if (m < 2) throw Error(ErrorKind::PreconditionFailed, "needs a quasi-homogeneous field with nonzero X_m, Y_m");
    auto wc = weak_center_check(field);
    if (!wc || !(wc->mu == Rational(2 * m)))
        throw Error(ErrorKind::PreconditionFailed, "weak center condition with mu = 2m does not hold");
    const BiPoly x = BiPoly::x(), y = BiPoly::y(), r2 = BiPoly::r2pow(1);
    DevlinIntegral f;
    f.m = m;
    f.numerator = r2 + (x * field.Y(m) - y * field.X(m)) * Rational(2);
    f.denominator = BiPoly::r2pow(m);
    return f;
}

bool verify_devlin(const PlanarField &field, const DevlinIntegral &f) {
    // X(num/den) = 0 with den = (x^2+y^2)^m reduces to X(num) r^2 = m num X(r^2)
    const BiPoly r2 = BiPoly::r2pow(1);
    if (!(f.denominator == BiPoly::r2pow(f.m))) return false;
    return field.lie_derivative(f.numerator) * r2 == f.numerator * field.lie_derivative(r2) * Rational(f.m);
}

} // namespace cfocus
