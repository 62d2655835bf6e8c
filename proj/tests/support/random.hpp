#pragma once

#include "cfocus/bipoly.hpp"
#include "cfocus/inverse.hpp"
#include "cfocus/lyapunov.hpp"

#include <random>

namespace cfocus::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// p/q with |p|, q <= bound
inline Rational random_rational(Rng &rng, int bound = 9) {
    return Rational(uniform_int(rng, -bound, bound), uniform_int(rng, 1, bound));
}

inline Rational random_nonzero(Rng &rng, int bound = 9) {
    Rational r;
    while (r.is_zero()) r = random_rational(rng, bound);
    return r;
}

// Each monomial present with probability `density`.
inline BiPoly random_homogeneous(Rng &rng, int degree, int bound = 9, double density = 0.7) {
    std::bernoulli_distribution keep(density);
    BiPoly p;
    for (int i = 0; i <= degree; ++i)
        if (keep(rng)) p.add_term(i, degree - i, random_rational(rng, bound));
    return p;
}

inline PlanarField random_field(Rng &rng, int max_degree, int bound = 9, double density = 0.5) {
    BiPoly p = -BiPoly::y(), q = BiPoly::x();
    for (int k = 2; k <= max_degree; ++k) {
        p += random_homogeneous(rng, k, bound, density);
        q += random_homogeneous(rng, k, bound, density);
    }
    return PlanarField(p, q);
}

inline PlanarField random_quasi_homogeneous(Rng &rng, int m, int bound = 9) {
    PlanarField f;
    do {
        f = PlanarField(-BiPoly::y() + random_homogeneous(rng, m, bound), BiPoly::x() + random_homogeneous(rng, m, bound));
    } while (f.X().is_zero() && f.Y().is_zero());
    return f;
}

inline InverseSpec random_spec(Rng &rng, int m, int bound = 5) {
    InverseSpec s = InverseSpec::blank(m);
    for (int j = 3; j <= m + 1; ++j) s.h[j] = random_homogeneous(rng, j, bound, 0.5);
    for (int k = 1; k < m; ++k) s.g[k] = random_homogeneous(rng, k, bound, 0.5);
    return s;
}

// Specs whose field is Hamiltonian, drawn from three shapes:
//   general H_j with g_k = 0 for k >= 1;
//   radial H_j (j <= m), arbitrary H_{m+1}, radial g_k;
//   the previous shape with H_j = 0 for 3 <= j <= m.
inline InverseSpec random_hamiltonian_spec(Rng &rng, int m, int bound = 5) {
    InverseSpec s = InverseSpec::blank(m);
    const int shape = uniform_int(rng, 0, 2);
    s.h[m + 1] = random_homogeneous(rng, m + 1, bound, 0.6);
    for (int j = 3; j <= m; ++j) {
        if (shape == 0)
            s.h[j] = random_homogeneous(rng, j, bound, 0.5);
        else if (shape == 1 && j % 2 == 0)
            s.h[j] = BiPoly::r2pow(j / 2) * random_rational(rng, bound);
    }
    if (shape != 0)
        for (int k = 2; k < m; k += 2) s.g[k] = BiPoly::r2pow(k / 2) * random_rational(rng, bound);
    return s;
}

} // namespace cfocus::testing
