#pragma once

// Independent reference computations: plain dense linear algebra over the
// rationals and direct quadrature.  Nothing here calls the solvers under test.

#include "cfocus/bipoly.hpp"
#include "cfocus/lyapunov.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace cfocus::testing {

using Matrix = std::vector<std::vector<Rational>>;

// One solution of A u = b (free variables set to zero), or nothing when the
// system is inconsistent.
inline std::optional<std::vector<Rational>> dense_solve(Matrix a, std::vector<Rational> b) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<Rational> u(cols);
    for (std::size_t i = 0; i < r; ++i) u[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return u;
}

// D(x^i y^j) written out by hand: x d/dy - y d/dx.
inline BiPoly rotate_monomial(int i, int j) {
    BiPoly out;
    if (j > 0) out.add_term(i + 1, j - 1, Rational(j));
    if (i > 0) out.add_term(i - 1, j + 1, Rational(-i));
    return out;
}

// Exact mean of x^i y^j over the unit circle: (i-1)!! (j-1)!! / (i+j)!! for
// even i, j and zero otherwise.
inline Rational monomial_average(int i, int j) {
    if (i % 2 || j % 2) return Rational(0);
    auto dfact = [](int n) {
        Rational r(1);
        for (int k = n; k > 1; k -= 2) r *= Rational(k);
        return r;
    };
    return dfact(i - 1) * dfact(j - 1) / dfact(i + j);
}

inline Rational exact_average(const BiPoly &p) {
    Rational acc;
    for (const auto &[m, c] : p.terms()) acc += c * monomial_average(m.i, m.j);
    return acc;
}

// f, k with D f + k (x^2+y^2)^{n/2} = g, found by elimination on the monomial
// basis.  k is unique; f is unique up to the kernel.
inline std::optional<std::pair<BiPoly, Rational>> homological_oracle(const BiPoly &g, int n) {
    const bool even = n % 2 == 0;
    const int unknowns = n + 1 + (even ? 1 : 0);
    Matrix a(n + 1, std::vector<Rational>(unknowns));
    std::vector<Rational> b(n + 1);
    for (int i = 0; i <= n; ++i) b[i] = g.coeff(i, n - i);
    for (int c = 0; c <= n; ++c) {
        BiPoly d = rotate_monomial(c, n - c);
        for (int i = 0; i <= n; ++i) a[i][c] = d.coeff(i, n - i);
    }
    if (even) {
        BiPoly rn = BiPoly::r2pow(n / 2);
        for (int i = 0; i <= n; ++i) a[i][n + 1] = rn.coeff(i, n - i);
    }
    auto u = dense_solve(a, b);
    if (!u) return std::nullopt;
    BiPoly f;
    for (int c = 0; c <= n; ++c) f.add_term(c, n - c, (*u)[c]);
    return std::pair{f, even ? (*u)[n + 1] : Rational(0)};
}

// Lyapunov constants by brute force: at each degree n, X(V) is expanded from
// scratch with the field's Lie derivative and the degree-n equation is solved
// by elimination.  Constants after the first nonzero one depend on the kernel
// choice, so even-degree H_n are normalized to zero circle average.
inline std::vector<Rational> lyapunov_oracle(const PlanarField &field, int order) {
    BiPoly v = BiPoly::r2pow(1) * Rational(1, 2);
    std::vector<Rational> out;
    const int last = order % 2 == 0 ? order + 2 : order + 1;
    for (int n = 3; n <= last; ++n) {
        BiPoly r = field.lie_derivative(v).homogeneous_part(n);
        auto sol = homological_oracle(-r, n);
        if (!sol) return {};
        BiPoly f = sol->first;
        if (n % 2 == 0) {
            out.push_back(-sol->second);
            // same normalization as the engine: no (x^2+y^2)^{n/2} component
            f -= BiPoly::r2pow(n / 2) * exact_average(f);
        }
        v += f;
    }
    return out;
}

// (1/2pi) * integral of p over the unit circle; the trapezoid rule is exact
// for trigonometric polynomials of degree below the sample count.
inline double circle_average_numeric(const BiPoly &p, int samples = 256) {
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        double t = 2.0 * std::numbers::pi * s / samples;
        acc += p.evaluate(std::cos(t), std::sin(t));
    }
    return acc / samples;
}

} // namespace cfocus::testing
