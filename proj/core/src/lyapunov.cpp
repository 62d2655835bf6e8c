#include "cfocus/lyapunov.hpp"
#include "cfocus/error.hpp"
#include "cfocus/homological.hpp"

#include <algorithm>

namespace cfocus {

PlanarField::PlanarField(BiPoly p, BiPoly q)
  : p_(std::move(p))
  , q_(std::move(q)) {}

int PlanarField::degree() const { return std::max(p_.degree(), q_.degree()); }

bool PlanarField::is_normalized() const {
    return p_.degree_range(0, 1) == -BiPoly::y() && q_.degree_range(0, 1) == BiPoly::x();
}

void PlanarField::require_normalized() const {
    if (!is_normalized())
        throw Error(ErrorKind::NonNormalizedLinearPart, "linear part must be (-y, x), got (" +
                                                            p_.degree_range(0, 1).str() + ", " +
                                                            q_.degree_range(0, 1).str() + ")");
}

int PlanarField::quasi_homogeneous_degree() const {
    BiPoly nx = X(), ny = Y();
    if (nx.is_zero() && ny.is_zero()) return 1;
    int m = std::max(nx.degree(), ny.degree());
    if (nx.is_homogeneous_of(m) && ny.is_homogeneous_of(m)) return m;
    return -1;
}

BiPoly PlanarField::lie_derivative(const BiPoly &f) const { return p_ * f.dx() + q_ * f.dy(); }

std::string Verdict::str() const {
    switch (kind) {
    case Kind::CenterCandidate: return "CenterCandidate(" + std::to_string(index) + ")";
    case Kind::StableFocus: return "StableFocus(" + std::to_string(index) + ")";
    case Kind::UnstableFocus: return "UnstableFocus(" + std::to_string(index) + ")";
    }
    return "?";
}

const BiPoly &LyapunovResult::H(int n) const {
    if (n < 3 || n - 3 >= static_cast<int>(h_list.size()))
        throw Error(ErrorKind::InvalidArgument, "H_" + std::to_string(n) + " not computed");
    return h_list[n - 3].poly();
}

int LyapunovResult::first_nonzero() const {
    for (std::size_t k = 0; k < v_list.size(); ++k)
        if (!v_list[k].is_zero()) return static_cast<int>(k) + 1;
    return 0;
}

Verdict verdict_from_constants(const std::vector<Rational> &v, int order) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        return {v[k].sign() < 0 ? Verdict::Kind::StableFocus : Verdict::Kind::UnstableFocus, static_cast<int>(k) + 1};
    }
    return {Verdict::Kind::CenterCandidate, order};
}

namespace {

void check_order(int order) {
    if (order < 2) throw Error(ErrorKind::OrderTooSmall, "order must be >= 2, got " + std::to_string(order));
}

Rational gauge_for(const LyapunovOptions &opts, int n) {
    auto it = opts.gauges.find(n);
    return it == opts.gauges.end() ? Rational(0) : it->second;
}

// Drives the degree-by-degree recursion.  `rhs(n, H)` must return R_n given
// H_2..H_{n-1}, where dV/dt at degree n equals D H_n + R_n.
// With `from_average` the constants are read as circle averages of R_n and
// cross-checked against the solver's projection.
template<typename Rhs>
LyapunovResult run_recursion(int order, const LyapunovOptions &opts, Rhs rhs, bool from_average = false) {
    LyapunovResult res;
    res.order = order;
    std::vector<BiPoly> H(order + 2);
    H[2] = BiPoly::r2pow(1) * Rational(1, 2);

    const int last = order % 2 == 0 ? order + 2 : order + 1;
    for (int n = 3; n <= last; ++n) {
        BiPoly r = rhs(n, H);
        HomologicalSolution sol = solve_homological(HomogeneousPoly(n, r), gauge_for(opts, n));
        if (n % 2 == 0) {
            if (from_average) {
                Rational v = circle_average(r);
                if (!(v == sol.k_const)) throw Error(ErrorKind::Internal, "circle average disagrees with projection");
                res.v_list.push_back(v);
            } else {
                res.v_list.push_back(sol.k_const);
            }
        }
        if (n <= order + 1) {
            H[n] = -sol.f.poly();
            res.h_list.emplace_back(n, H[n]);
        }
    }
    res.verdict = verdict_from_constants(res.v_list, order);
    return res;
}

} // namespace

LyapunovResult compute_lyapunov(const PlanarField &field, int order, const LyapunovOptions &opts) {
    field.require_normalized();
    check_order(order);

    const int m = field.degree();
    std::vector<BiPoly> xs(m + 1), ys(m + 1);
    for (int k = 2; k <= m; ++k) {
        xs[k] = field.X(k);
        ys[k] = field.Y(k);
    }

    // grad[j] caches (H_j)_x, (H_j)_y
    std::vector<std::pair<BiPoly, BiPoly>> grad(order + 2);
    return run_recursion(order, opts, [&](int n, const std::vector<BiPoly> &H) {
        if (n - 1 >= 2 && n - 1 <= order + 1) grad[n - 1] = {H[n - 1].dx(), H[n - 1].dy()};
        BiPoly r;
        for (int j = 2; j <= n - 1; ++j) {
            int k = n + 1 - j;
            if (k < 2 || k > m) continue;
            if (H[j].is_zero()) continue;
            r += grad[j].first * xs[k] + grad[j].second * ys[k];
        }
        return r;
    });
}

LyapunovResult constants_quasihomogeneous(const PlanarField &field, int order, const LyapunovOptions &opts) {
    field.require_normalized();
    check_order(order);
    const int m = field.quasi_homogeneous_degree();
    if (m < 0) throw Error(ErrorKind::NotQuasiHomogeneous, "nonlinear part mixes several degrees");
    if (m == 1) {
        return run_recursion(order, opts, [](int, const std::vector<BiPoly> &) { return BiPoly(); });
    }

    const BiPoly X = field.X(m), Y = field.Y(m);
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    const BiPoly div = X.dx() + Y.dy();

    // X = -Ht_y - y g + c x r^{m-1},  Y = Ht_x + x g + c y r^{m-1}
    Rational c;
    BiPoly rm1;
    if (m % 2 == 1) {
        c = circle_average(div) / Rational(m + 1);
        rm1 = BiPoly::r2pow((m - 1) / 2);
    }
    HomologicalSolution gs = solve_homological(HomogeneousPoly(m - 1, div - rm1 * (c * Rational(m + 1))));
    if (!gs.k_const.is_zero()) throw Error(ErrorKind::Internal, "radial split left a nonzero average");
    const BiPoly g = gs.f.poly();
    const BiPoly Ht = (x * Y - y * X - BiPoly::r2pow(1) * g) * (Rational(1) / Rational(m + 1));
    if (!(-Ht.dy() - y * g + x * rm1 * c == X) || !(Ht.dx() + x * g + y * rm1 * c == Y))
        throw Error(ErrorKind::Internal, "quasi-homogeneous decomposition does not reproduce the field");

    return run_recursion(order, opts, [&](int n, const std::vector<BiPoly> &H) {
        const int j = n + 1 - m;
        if (j < 2 || H[j].is_zero()) return BiPoly();
        BiPoly r = g * apply_rotational(H[j]) + poisson_bracket(Ht, H[j]);
        if (!c.is_zero()) r += rm1 * H[j] * (c * Rational(j));
        return r;
    }, true);
}

BiPoly lyapunov_function(const LyapunovResult &result) {
    BiPoly v = BiPoly::r2pow(1) * Rational(1, 2);
    for (const auto &h : result.h_list) v += h.poly();
    return v;
}

BiPoly residual(const PlanarField &field, const LyapunovResult &result) {
    BiPoly r = field.lie_derivative(lyapunov_function(result));
    for (std::size_t k = 0; k < result.v_list.size(); ++k)
        r -= BiPoly::r2pow(static_cast<int>(k) + 2) * result.v_list[k];
    return r;
}

} // namespace cfocus
