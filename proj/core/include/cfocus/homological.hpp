#pragma once

#include "cfocus/bipoly.hpp"

namespace cfocus {

struct HomologicalSolution {
    HomogeneousPoly f;
    // Coefficient of (x^2+y^2)^{n/2} projected out of g; zero for odd n.
    Rational k_const;
    // Coefficient of (x^2+y^2)^{n/2} carried by f; zero for odd n.
    Rational gauge;
};

// D f = x f_y - y f_x
HomogeneousPoly apply_rotational(const HomogeneousPoly &f);
BiPoly apply_rotational(const BiPoly &f);

// Solves D f + k (x^2+y^2)^{n/2} = g.  For even n the kernel component of f is
// set to `gauge`; for odd n `gauge` is ignored.
HomologicalSolution solve_homological(const HomogeneousPoly &g, const Rational &gauge = Rational(0));

} // namespace cfocus
