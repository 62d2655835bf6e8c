#include "cfocus/bipoly.hpp"
#include "cfocus/error.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace cfocus {

namespace {

Rational binomial(int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(mpq_class(b));
}

// i^p
GaussRational ipow(int p) {
    switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

} // namespace

BiPoly::BiPoly(const Rational &c) {
    if (!c.is_zero()) terms_.emplace(Monomial{0, 0}, c);
}

BiPoly BiPoly::x() { return monomial(1, 0); }
BiPoly BiPoly::y() { return monomial(0, 1); }

BiPoly BiPoly::monomial(int i, int j, const Rational &c) {
    if (i < 0 || j < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    BiPoly p;
    if (!c.is_zero()) p.terms_.emplace(Monomial{i, j}, c);
    return p;
}

BiPoly BiPoly::r2pow(int k) {
    BiPoly p;
    for (int a = 0; a <= k; ++a) p.terms_.emplace(Monomial{2 * a, 2 * (k - a)}, binomial(k, a));
    return p;
}

int BiPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
int BiPoly::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

Rational BiPoly::coeff(int i, int j) const {
    auto it = terms_.find(Monomial{i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

void BiPoly::add_term(int i, int j, const Rational &c) {
    if (c.is_zero()) return;
    if (i < 0 || j < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BiPoly BiPoly::homogeneous_part(int n) const { return degree_range(n, n); }

BiPoly BiPoly::degree_range(int lo, int hi) const {
    BiPoly out;
    if (lo > hi) return out;
    auto first = terms_.lower_bound(Monomial{std::max(lo, 0), 0});
    for (auto it = first; it != terms_.end() && it->first.degree() <= hi; ++it)
        out.terms_.emplace_hint(out.terms_.end(), it->first, it->second);
    return out;
}

bool BiPoly::is_homogeneous_of(int n) const {
    return std::all_of(terms_.begin(), terms_.end(), [n](const auto &t) { return t.first.degree() == n; });
}

BiPoly BiPoly::dx() const {
    BiPoly out;
    for (const auto &[m, c] : terms_)
        if (m.i > 0) out.terms_.emplace(Monomial{m.i - 1, m.j}, c * Rational(m.i));
    return out;
}

BiPoly BiPoly::dy() const {
    BiPoly out;
    for (const auto &[m, c] : terms_)
        if (m.j > 0) out.terms_.emplace(Monomial{m.i, m.j - 1}, c * Rational(m.j));
    return out;
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly result(1);
    BiPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

BiPoly BiPoly::reflect(int sx, int sy) const {
    BiPoly out;
    for (const auto &[m, c] : terms_) {
        bool flip = (sx < 0 && (m.i & 1)) != (sy < 0 && (m.j & 1));
        out.terms_.emplace(m, flip ? -c : c);
    }
    return out;
}

double BiPoly::evaluate(double x, double y) const {
    double acc = 0.0;
    for (const auto &[m, c] : terms_) {
        double v = c.to_double();
        for (int k = 0; k < m.i; ++k) v *= x;
        for (int k = 0; k < m.j; ++k) v *= y;
        acc += v;
    }
    return acc;
}

BiPoly BiPoly::operator-() const {
    BiPoly out = *this;
    for (auto &t : out.terms_) t.second = -t.second;
    return out;
}

BiPoly &BiPoly::operator+=(const BiPoly &o) {
    for (const auto &[m, c] : o.terms_) add_term(m.i, m.j, c);
    return *this;
}

BiPoly &BiPoly::operator-=(const BiPoly &o) {
    for (const auto &[m, c] : o.terms_) add_term(m.i, m.j, -c);
    return *this;
}

BiPoly &BiPoly::operator*=(const Rational &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) t.second *= c;
    return *this;
}

BiPoly operator*(const BiPoly &a, const BiPoly &b) {
    BiPoly out;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) out.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
    return out;
}

std::string BiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        Rational mag = c.abs();
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        bool unit = mag == Rational(1) && m.degree() > 0;
        if (!unit) os << mag;
        bool need_star = !unit;
        auto factor = [&](const char *v, int e) {
            if (e == 0) return;
            if (need_star) os << '*';
            os << v;
            if (e > 1) os << '^' << e;
            need_star = true;
        };
        factor("x", m.i);
        factor("y", m.j);
    }
    return os.str();
}

std::string BiPoly::to_text() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        if (!first) os << "; ";
        first = false;
        os << m.i << ' ' << m.j << ' ' << c;
    }
    return os.str();
}

BiPoly BiPoly::from_text(const std::string &text) {
    BiPoly out;
    std::istringstream all(text);
    std::string chunk;
    while (std::getline(all, chunk, ';')) {
        std::istringstream is(chunk);
        int i = 0, j = 0;
        std::string c;
        if (!(is >> i)) continue;
        if (!(is >> j >> c)) throw Error(ErrorKind::InvalidArgument, "malformed term '" + chunk + "'");
        std::string extra;
        if (is >> extra) throw Error(ErrorKind::InvalidArgument, "trailing data in term '" + chunk + "'");
        out.add_term(i, j, Rational::parse(c));
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const BiPoly &p) { return os << p.str(); }

HomogeneousPoly::HomogeneousPoly(int degree, BiPoly p)
  : degree_(degree)
  , poly_(std::move(p)) {
    if (degree < 0) throw Error(ErrorKind::DegreeMismatch, "negative degree");
    if (!poly_.is_homogeneous_of(degree))
        throw Error(ErrorKind::DegreeMismatch, "polynomial is not homogeneous of degree " + std::to_string(degree));
}

GaussRational operator/(const GaussRational &a, const GaussRational &b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    GaussRational num = a * b.conj();
    return {num.re / n, num.im / n};
}

GaussRational ComplexCoeffs::at(int k, int l) const {
    auto it = entries.find({k, l});
    return it == entries.end() ? GaussRational{} : it->second;
}

void ComplexCoeffs::add(int k, int l, const GaussRational &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = entries.try_emplace({k, l}, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) entries.erase(it);
    }
}

bool ComplexCoeffs::satisfies_reality() const {
    for (const auto &[kl, c] : entries)
        if (!(at(kl.second, kl.first) == c.conj())) return false;
    return true;
}

BiPoly poisson_bracket(const BiPoly &f, const BiPoly &g) { return f.dx() * g.dy() - f.dy() * g.dx(); }

std::vector<HomogeneousPoly> homogeneous_components(const BiPoly &p) {
    std::vector<HomogeneousPoly> out;
    if (p.is_zero()) return out;
    for (int n = p.min_degree(); n <= p.degree(); ++n) {
        BiPoly part = p.homogeneous_part(n);
        if (!part.is_zero()) out.emplace_back(n, std::move(part));
    }
    return out;
}

Rational circle_average(const HomogeneousPoly &p) { return circle_average(p.poly()); }

Rational circle_average(const BiPoly &p) {
    Rational acc;
    for (const auto &[m, c] : p.terms()) {
        if ((m.i & 1) || (m.j & 1)) continue;
        acc += c * double_factorial(m.i - 1) * double_factorial(m.j - 1) / double_factorial(m.i + m.j);
    }
    return acc;
}

ComplexCoeffs to_complex(const BiPoly &p) {
    // x = (z + zb)/2, y = -i (z - zb)/2
    ComplexCoeffs out;
    for (const auto &[m, c] : p.terms()) {
        int a = m.i, b = m.j;
        Rational scale = c / Rational(2).pow(static_cast<unsigned>(a + b));
        GaussRational lead = GaussRational{scale, 0} * ipow(3 * b);
        for (int s = 0; s <= a; ++s) {
            for (int t = 0; t <= b; ++t) {
                Rational w = binomial(a, s) * binomial(b, t);
                if ((b - t) & 1) w = -w;
                out.add(s + t, a + b - s - t, lead * GaussRational{w, 0});
            }
        }
    }
    return out;
}

BiPoly from_complex(const ComplexCoeffs &cc) {
    if (!cc.satisfies_reality()) throw Error(ErrorKind::NonRealInput, "coefficients violate c(k,l) = conj(c(l,k))");
    // z^k zb^l = (x + iy)^k (x - iy)^l
    std::map<Monomial, GaussRational, GradedLex> acc;
    for (const auto &[kl, c] : cc.entries) {
        auto [k, l] = kl;
        for (int s = 0; s <= k; ++s) {
            for (int t = 0; t <= l; ++t) {
                GaussRational w = GaussRational{binomial(k, s) * binomial(l, t), 0} * ipow(s) * ipow(3 * t);
                Monomial mono{k + l - s - t, s + t};
                auto it = acc.try_emplace(mono).first;
                it->second = it->second + c * w;
            }
        }
    }
    BiPoly out;
    for (const auto &[m, c] : acc) {
        if (!c.im.is_zero()) throw Error(ErrorKind::NonRealInput, "imaginary residue after back-substitution");
        out.add_term(m.i, m.j, c.re);
    }
    return out;
}

double evaluate(const BiPoly &p, double x, double y) { return p.evaluate(x, y); }

} // namespace cfocus
