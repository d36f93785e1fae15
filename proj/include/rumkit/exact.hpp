#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "rumkit/errors.hpp"

namespace rumkit {

/// Arbitrary-precision rational, the base coefficient field.
using Rational = mpq_class;

/// True if n has no repeated prime factor (1 counts as square-free).
bool is_square_free(long n);

/// Element of the real quadratic field Q(sqrt(D)):
///
///     value = rational_part + surd_part * sqrt(radicand)
///
/// radicand 0 marks a pure rational. A radicand of 1 folds into the
/// rational part on construction; radicands >= 2 must be square-free.
/// Scalars with two different nonzero radicands cannot be combined --
/// arithmetic throws, which is what keeps each framework inside a single
/// genuine field.
class ExactScalar {
public:
    ExactScalar() : rad_(0) {}
    ExactScalar(long n) : rat_(n), rad_(0) {}
    ExactScalar(const Rational& r) : rat_(r), rad_(0) { rat_.canonicalize(); }
    ExactScalar(Rational rational, Rational surd, long radicand);

    const Rational& rational_part() const { return rat_; }
    const Rational& surd_part() const { return surd_; }
    long radicand() const { return rad_; }

    bool is_zero() const { return rat_ == 0 && surd_ == 0; }
    bool is_rational() const { return surd_ == 0; }

    /// Radicand that actually matters for arithmetic: 0 when the surd
    /// coefficient is zero, even if a radicand was declared.
    long effective_radicand() const { return surd_ == 0 ? 0 : rad_; }

    double to_double() const;

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    /// Mathematical equality: 1/2 declared over Q(sqrt 3) equals 1/2 over Q.
    bool operator==(const ExactScalar& o) const;
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }

    ExactScalar inverse() const;

    /// Literal form `R` or `R+R*sqrt(D)` with R = [-]int[/int], no whitespace.
    std::string to_string() const;
    static ExactScalar parse(std::string_view text);

private:
    Rational rat_;
    Rational surd_;
    long rad_;

    static long combine_radicands(const ExactScalar& a, const ExactScalar& b);
};

/// Vector of exact scalars (a point or direction in R^dim).
using ExactVec = std::vector<ExactScalar>;

ExactVec operator+(const ExactVec& a, const ExactVec& b);
ExactVec operator-(const ExactVec& a, const ExactVec& b);
ExactScalar dot(const ExactVec& a, const ExactVec& b);
bool is_zero(const ExactVec& v);

} // namespace rumkit
