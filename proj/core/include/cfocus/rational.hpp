#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cfocus {

// Exact rational number, always canonical (lowest terms, positive denominator).
class Rational {
public:
    Rational() = default;
    Rational(long v)
      : q_(v) {}
    Rational(int v)
      : q_(static_cast<long>(v)) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class &q)
      : q_(q) {
        q_.canonicalize();
    }

    // Accepts "p", "-p", "p/q".  Throws Error(InvalidArgument) on anything else,
    // including decimal literals.
    static Rational parse(std::string_view text);

    const mpq_class &raw() const { return q_; }

    std::string str() const;
    double to_double() const { return q_.get_d(); }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational &operator+=(const Rational &o) {
        q_ += o.q_;
        return *this;
    }
    Rational &operator-=(const Rational &o) {
        q_ -= o.q_;
        return *this;
    }
    Rational &operator*=(const Rational &o) {
        q_ *= o.q_;
        return *this;
    }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational pow(unsigned e) const;
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

private:
    mpq_class q_{0};
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

// n!! with (-1)!! = 0!! = 1.
Rational double_factorial(int n);

} // namespace cfocus
