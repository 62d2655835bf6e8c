#include "cfocus/structure.hpp"
#include "cfocus/homological.hpp"

namespace cfocus {

HGDecomposition hg_decompose(const PlanarField &field) {
    field.require_normalized();
    const BiPoly x = BiPoly::x(), y = BiPoly::y(), r2 = BiPoly::r2pow(1);
    HGDecomposition out;
    for (int k = 2; k <= field.degree(); ++k) {
        BiPoly X = field.X(k), Y = field.Y(k);
        HomologicalSolution sol = solve_homological(HomogeneousPoly(k - 1, X.dx() + Y.dy()));
        if (!sol.k_const.is_zero()) throw ObstructionError(k - 1, sol.k_const);
        const BiPoly &g = sol.f.poly();
        // Euler on the degree k+1 part: (k+1) h = x h_x + y h_y
        BiPoly h = (x * Y - y * X - r2 * g) * (Rational(1) / Rational(k + 1));
        out.g += g;
        out.h += h;
    }
    if (!(-out.h.dy() - y * out.g == field.X()) || !(out.h.dx() + x * out.g == field.Y()))
        throw Error(ErrorKind::Internal, "(h, g) does not reproduce the field");
    return out;
}

PlanarField field_from_hg(const HGDecomposition &hg) {
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    return PlanarField(-y - hg.h.dy() - y * hg.g, x + hg.h.dx() + x * hg.g);
}

std::optional<WeakCenterResult> weak_center_check(const PlanarField &field) {
    field.require_normalized();
    const BiPoly X = field.X(), Y = field.Y();
    const BiPoly lhs = BiPoly::r2pow(1) * (X.dx() + Y.dy());
    const BiPoly rhs = BiPoly::x() * X + BiPoly::y() * Y;

    WeakCenterResult res;
    if (rhs.is_zero()) {
        if (!lhs.is_zero()) return std::nullopt;
        res.mu = Rational(0);
    } else {
        const auto &[mono, c] = *rhs.terms().begin();
        res.mu = lhs.coeff(mono.i, mono.j) / c;
        if (!(lhs == rhs * res.mu)) return std::nullopt;
    }

    res.integral_ok = true;
    for (const auto &comp : homogeneous_components(rhs))
        if (!circle_average(comp).is_zero()) res.integral_ok = false;
    res.divergence_average_ok = true;
    for (const auto &comp : homogeneous_components(X.dx() + Y.dy()))
        if (!circle_average(comp).is_zero()) res.divergence_average_ok = false;

    const int m = field.degree();
    res.parity_ok = m % 2 == 0 || !(res.mu == Rational(m + 1));
    if (!res.mu.is_zero()) res.lambda_darboux = Rational(2) / res.mu;
    return res;
}

ComplexCoeffs complex_field_coefficients(const PlanarField &field) {
    ComplexCoeffs zx = to_complex(field.X());
    ComplexCoeffs zy = to_complex(field.Y());
    ComplexCoeffs out = zx;
    for (const auto &[kl, c] : zy.entries) out.add(kl.first, kl.second, GaussRational{-c.im, c.re});
    return out;
}

SymmetryReport detect_symmetries(const PlanarField &field) {
    SymmetryReport rep;
    const BiPoly X = field.X(), Y = field.Y();
    ComplexCoeffs a = complex_field_coefficients(field);

    rep.rev_x_axis = true;
    rep.rev_y_axis = true;
    for (const auto &[kl, c] : a.entries) {
        if (!c.re.is_zero()) rep.rev_x_axis = false;
        GaussRational mirrored = c.conj();
        if ((kl.first + kl.second) % 2 == 1) mirrored = GaussRational{-mirrored.re, -mirrored.im};
        if (!(mirrored == c)) rep.rev_y_axis = false;
    }
    // the linear part must itself be (-y, x) for the criteria to apply
    if (!field.is_normalized()) rep.rev_x_axis = rep.rev_y_axis = false;

    rep.cauchy_riemann = X.dx() == Y.dy() && X.dy() == -Y.dx();
    rep.hamiltonian = field.divergence().is_zero();
    return rep;
}

std::optional<BiPoly> hamiltonian_of(const PlanarField &field) {
    if (!field.divergence().is_zero()) return std::nullopt;
    // H = int_0^x Q(s, 0) ds - int_0^y P(x, t) dt
    BiPoly H;
    for (const auto &[m, c] : field.q().terms())
        if (m.j == 0) H.add_term(m.i + 1, 0, c / Rational(m.i + 1));
    for (const auto &[m, c] : field.p().terms()) H.add_term(m.i, m.j + 1, -c / Rational(m.j + 1));
    if (!(-H.dy() == field.p()) || !(H.dx() == field.q())) return std::nullopt;
    return H;
}

std::set<int> bautin_classify(const Rational &l2, const Rational &l3, const Rational &l4, const Rational &l5,
                              const Rational &l6) {
    std::set<int> out;
    if (l4.is_zero() && l5.is_zero()) out.insert(1);
    if (l2.is_zero() && l5.is_zero()) out.insert(2);
    if ((l3 - l6).is_zero()) out.insert(3);
    if (l5.is_zero() && (l4 + Rational(5) * (l3 - l6)).is_zero() && (l3 * l6 - Rational(2) * l6 * l6 - l2 * l2).is_zero())
        out.insert(4);
    return out;
}

std::set<int> schlomiuk_classify(const Rational &a, const Rational &b, const Rational &c, const Rational &k,
                                 const Rational &l, const Rational &m) {
    std::set<int> out;
    const Rational ac = a + c, km = k + m, al = Rational(2) * a + l, bm = b + Rational(2) * m;
    bool i1 = (ac * bm - al * km).is_zero();
    bool i2 = (k * ac.pow(3) + (l - a) * ac.pow(2) * km + (m - b) * ac * km.pow(2) - c * km.pow(3)).is_zero();
    if (i1 && i2) out.insert(1);
    if (al.is_zero() && bm.is_zero()) out.insert(2);
    bool j1 = (Rational(5) * ac - al).is_zero();
    bool j2 = (Rational(5) * km - bm).is_zero();
    bool j3 = (c * c + c * ac + k * k + k * km).is_zero();
    if (j1 && j2 && j3) out.insert(3);
    return out;
}

std::string roman(int n) {
    static const char *names[] = {"", "i", "ii", "iii", "iv", "v"};
    return n >= 1 && n <= 5 ? names[n] : std::to_string(n);
}

} // namespace cfocus
