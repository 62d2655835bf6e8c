#include "cfocus/rational.hpp"
#include "cfocus/error.hpp"

#include <cctype>
#include <ostream>

namespace cfocus {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonRealInput: return "NonRealInput";
    case ErrorKind::NonNormalizedLinearPart: return "NonNormalizedLinearPart";
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
    case ErrorKind::ObstructionNonzeroAverage: return "ObstructionNonzeroAverage";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::LambdaZero: return "LambdaZero";
    case ErrorKind::ZeroCurve: return "ZeroCurve";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::TimeBudgetExceeded: return "TimeBudgetExceeded";
    case ErrorKind::AngleStalled: return "AngleStalled";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::MissingParam: return "MissingParam";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

Rational::Rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorKind::InvalidArgument, "not an exact rational: '" + std::string(text) + "'");

    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    if (neg) n = -n;
    return Rational(mpq_class(n, d));
}

std::string Rational::str() const { return q_.get_str(); }

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::pow(unsigned e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
    return Rational(mpq_class(n, d));
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

Rational double_factorial(int n) {
    mpz_class acc = 1;
    for (int k = n; k > 1; k -= 2) acc *= k;
    return Rational(mpq_class(acc));
}

} // namespace cfocus
