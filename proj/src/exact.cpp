#include "rumkit/exact.hpp"

#include <cmath>

namespace rumkit {

bool is_square_free(long n) {
    if (n < 0) return false;
    if (n <= 3) return true;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

ExactScalar::ExactScalar(Rational rational, Rational surd, long radicand)
    : rat_(std::move(rational)), surd_(std::move(surd)), rad_(radicand) {
    rat_.canonicalize();
    surd_.canonicalize();
    if (rad_ < 0) throw ValidationError("radicand must be nonnegative, got " + std::to_string(rad_));
    if (rad_ == 0 || rad_ == 1) {
        // sqrt(0) = 0, sqrt(1) = 1: fold into the rational part.
        if (rad_ == 1) rat_ += surd_;
        surd_ = 0;
        rad_ = 0;
        return;
    }
    if (!is_square_free(rad_))
        throw ValidationError("radicand must be square-free, got " + std::to_string(rad_));
}

double ExactScalar::to_double() const {
    double v = rat_.get_d();
    if (surd_ != 0) v += surd_.get_d() * std::sqrt(static_cast<double>(rad_));
    return v;
}

long ExactScalar::combine_radicands(const ExactScalar& a, const ExactScalar& b) {
    const long ra = a.effective_radicand();
    const long rb = b.effective_radicand();
    if (ra != 0 && rb != 0 && ra != rb)
        throw ValidationError("cannot combine scalars over sqrt(" + std::to_string(ra) +
                              ") and sqrt(" + std::to_string(rb) + ")");
    return ra != 0 ? ra : rb;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r;
    r.rat_ = -rat_;
    r.surd_ = -surd_;
    r.rad_ = rad_;
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    const long d = combine_radicands(*this, o);
    rat_ += o.rat_;
    surd_ += o.surd_;
    rad_ = surd_ == 0 ? 0 : d;
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    const long d = combine_radicands(*this, o);
    rat_ -= o.rat_;
    surd_ -= o.surd_;
    rad_ = surd_ == 0 ? 0 : d;
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    const long d = combine_radicands(*this, o);
    // (a + b sqrt(D)) (c + e sqrt(D)) = (ac + beD) + (ae + bc) sqrt(D)
    Rational nrat = rat_ * o.rat_ + surd_ * o.surd_ * d;
    Rational nsurd = rat_ * o.surd_ + surd_ * o.rat_;
    rat_ = std::move(nrat);
    surd_ = std::move(nsurd);
    rad_ = surd_ == 0 ? 0 : d;
    return *this;
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw ValidationError("division by zero exact scalar");
    if (surd_ == 0) {
        ExactScalar r;
        r.rat_ = 1 / rat_;
        return r;
    }
    // 1/(a + b sqrt(D)) = (a - b sqrt(D)) / (a^2 - b^2 D); the norm is
    // nonzero because sqrt(D) is irrational for square-free D >= 2.
    Rational norm = rat_ * rat_ - surd_ * surd_ * rad_;
    ExactScalar r;
    r.rat_ = rat_ / norm;
    r.surd_ = -surd_ / norm;
    r.rad_ = rad_;
    return r;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    return *this *= o.inverse();
}

bool ExactScalar::operator==(const ExactScalar& o) const {
    if (rat_ != o.rat_) return false;
    if (surd_ == 0 && o.surd_ == 0) return true;
    return surd_ == o.surd_ && effective_radicand() == o.effective_radicand();
}

namespace {

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

Rational parse_rational_literal(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::string_view body = text;
    if (body.front() == '-') body.remove_prefix(1);
    if (body.empty()) throw ParseError("bare '-' is not a rational literal");
    bool seen_slash = false;
    for (size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c == '/') {
            if (seen_slash || i == 0 || i + 1 == body.size())
                throw ParseError("malformed rational literal '" + std::string(text) + "'");
            seen_slash = true;
        } else if (c < '0' || c > '9') {
            throw ParseError("malformed rational literal '" + std::string(text) + "'");
        }
    }
    Rational q;
    if (q.set_str(std::string(text), 10) != 0)
        throw ParseError("malformed rational literal '" + std::string(text) + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

} // namespace

std::string ExactScalar::to_string() const {
    if (surd_ == 0) return rational_to_string(rat_);
    return rational_to_string(rat_) + "+" + rational_to_string(surd_) + "*sqrt(" +
           std::to_string(rad_) + ")";
}

ExactScalar ExactScalar::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty scalar literal");
    const size_t plus = text.find('+', 1);
    if (plus == std::string_view::npos)
        return ExactScalar(parse_rational_literal(text));
    const std::string_view left = text.substr(0, plus);
    std::string_view right = text.substr(plus + 1);
    const std::string_view star_sqrt = "*sqrt(";
    const size_t star = right.find(star_sqrt);
    if (star == std::string_view::npos || right.empty() || right.back() != ')')
        throw ParseError("malformed scalar literal '" + std::string(text) +
                         "' (expected R or R+R*sqrt(D))");
    const std::string_view coeff = right.substr(0, star);
    const std::string_view rad_text =
        right.substr(star + star_sqrt.size(), right.size() - star - star_sqrt.size() - 1);
    if (rad_text.empty()) throw ParseError("empty radicand in '" + std::string(text) + "'");
    for (char c : rad_text)
        if (c < '0' || c > '9')
            throw ParseError("malformed radicand in '" + std::string(text) + "'");
    long rad = 0;
    try {
        rad = std::stol(std::string(rad_text));
    } catch (const std::exception&) {
        throw ParseError("radicand out of range in '" + std::string(text) + "'");
    }
    try {
        return ExactScalar(parse_rational_literal(left), parse_rational_literal(coeff), rad);
    } catch (const ValidationError& e) {
        throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
    }
}

ExactVec operator+(const ExactVec& a, const ExactVec& b) {
    if (a.size() != b.size()) throw ValidationError("vector dimension mismatch");
    ExactVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

ExactVec operator-(const ExactVec& a, const ExactVec& b) {
    if (a.size() != b.size()) throw ValidationError("vector dimension mismatch");
    ExactVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ExactScalar dot(const ExactVec& a, const ExactVec& b) {
    if (a.size() != b.size()) throw ValidationError("vector dimension mismatch");
    ExactScalar s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const ExactVec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

} // namespace rumkit
