#include "cfocus/homological.hpp"
#include "cfocus/error.hpp"

namespace cfocus {

BiPoly apply_rotational(const BiPoly &f) { return BiPoly::x() * f.dy() - BiPoly::y() * f.dx(); }

HomogeneousPoly apply_rotational(const HomogeneousPoly &f) {
    return HomogeneousPoly(f.degree(), apply_rotational(f.poly()));
}

HomologicalSolution solve_homological(const HomogeneousPoly &g, const Rational &gauge) {
    const int n = g.degree();
    const bool even = n % 2 == 0;

    // D z^k zb^l = i (k - l) z^k zb^l
    ComplexCoeffs cg = to_complex(g.poly());
    ComplexCoeffs cf;
    Rational k_const;
    for (const auto &[kl, c] : cg.entries) {
        auto [k, l] = kl;
        if (k == l) {
            // reality forces a real diagonal coefficient
            if (!c.im.is_zero()) throw Error(ErrorKind::Internal, "non-real diagonal coefficient");
            k_const = c.re;
            continue;
        }
        // c / (i (k-l)) = -i c / (k-l)
        Rational d(k - l);
        cf.add(k, l, GaussRational{c.im / d, -c.re / d});
    }
    if (even && !gauge.is_zero()) cf.add(n / 2, n / 2, GaussRational{gauge, 0});

    HomologicalSolution sol{HomogeneousPoly(n, from_complex(cf)), k_const, even ? gauge : Rational(0)};
    if (!even && !sol.k_const.is_zero()) throw Error(ErrorKind::Internal, "odd degree with nonzero projection");
    return sol;
}

} // namespace cfocus
