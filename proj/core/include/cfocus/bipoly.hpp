#pragma once

#include "cfocus/rational.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cfocus {

// Exponent pair: x^i y^j.
struct Monomial {
    int i = 0;
    int j = 0;

    int degree() const { return i + j; }
    friend bool operator==(const Monomial &, const Monomial &) = default;
};

// Graded lexicographic: lower total degree first, then higher power of x first.
struct GradedLex {
    bool operator()(const Monomial &a, const Monomial &b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.i > b.i;
    }
};

class BiPoly {
public:
    using TermMap = std::map<Monomial, Rational, GradedLex>;

    BiPoly() = default;
    BiPoly(const Rational &c);
    BiPoly(long c)
      : BiPoly(Rational(c)) {}
    BiPoly(int c)
      : BiPoly(Rational(c)) {}

    static BiPoly x();
    static BiPoly y();
    static BiPoly monomial(int i, int j, const Rational &c = Rational(1));
    // (x^2 + y^2)^k
    static BiPoly r2pow(int k);

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int degree() const;
    // Lowest total degree present; -1 for the zero polynomial.
    int min_degree() const;
    Rational coeff(int i, int j) const;
    void add_term(int i, int j, const Rational &c);

    BiPoly homogeneous_part(int n) const;
    // Sum of homogeneous parts with lo <= degree <= hi.
    BiPoly degree_range(int lo, int hi) const;
    bool is_homogeneous_of(int n) const;

    BiPoly dx() const;
    BiPoly dy() const;
    BiPoly pow(unsigned e) const;
    // Substitute (x, y) -> (sx*x, sy*y) with sx, sy in {1, -1}.
    BiPoly reflect(int sx, int sy) const;

    double evaluate(double x, double y) const;

    BiPoly operator-() const;
    BiPoly &operator+=(const BiPoly &o);
    BiPoly &operator-=(const BiPoly &o);
    BiPoly &operator*=(const Rational &c);
    friend BiPoly operator+(BiPoly a, const BiPoly &b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly &b) { return a -= b; }
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b);
    friend BiPoly operator*(BiPoly a, const Rational &c) { return a *= c; }
    friend BiPoly operator*(const Rational &c, BiPoly a) { return a *= c; }
    friend bool operator==(const BiPoly &a, const BiPoly &b) { return a.terms_ == b.terms_; }

    // Human-readable form, e.g. "x^2 - 1/3*x*y^2".
    std::string str() const;
    // Canonical text form: one "i j p/q" triplet per term, separated by "; ".
    std::string to_text() const;
    static BiPoly from_text(const std::string &text);

private:
    TermMap terms_;
};

std::ostream &operator<<(std::ostream &os, const BiPoly &p);

class HomogeneousPoly {
public:
    HomogeneousPoly() = default;
    // Throws Error(DegreeMismatch) if some term of p has a different degree.
    HomogeneousPoly(int degree, BiPoly p);

    int degree() const { return degree_; }
    const BiPoly &poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    friend bool operator==(const HomogeneousPoly &, const HomogeneousPoly &) = default;

private:
    int degree_ = 0;
    BiPoly poly_;
};

// Gaussian rational re + i*im.
struct GaussRational {
    Rational re;
    Rational im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    GaussRational conj() const { return {re, -im}; }
    friend GaussRational operator+(const GaussRational &a, const GaussRational &b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRational operator-(const GaussRational &a, const GaussRational &b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRational operator*(const GaussRational &a, const GaussRational &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational &a, const GaussRational &b);
    friend bool operator==(const GaussRational &, const GaussRational &) = default;
};

// Coefficients of z^k zbar^l.
struct ComplexCoeffs {
    std::map<std::pair<int, int>, GaussRational> entries;

    GaussRational at(int k, int l) const;
    void add(int k, int l, const GaussRational &c);
    bool satisfies_reality() const;
    friend bool operator==(const ComplexCoeffs &, const ComplexCoeffs &) = default;
};

BiPoly poisson_bracket(const BiPoly &f, const BiPoly &g);
std::vector<HomogeneousPoly> homogeneous_components(const BiPoly &p);
Rational circle_average(const HomogeneousPoly &p);
// Average of every homogeneous component of a general polynomial, summed.
Rational circle_average(const BiPoly &p);
ComplexCoeffs to_complex(const BiPoly &p);
// Throws Error(NonRealInput) when the reality condition fails.
BiPoly from_complex(const ComplexCoeffs &c);
double evaluate(const BiPoly &p, double x, double y);

} // namespace cfocus
