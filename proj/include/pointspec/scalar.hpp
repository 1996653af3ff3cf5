#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pointspec/errors.hpp"

namespace pointspec {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Reduced rational with positive denominator.
BigRat make_rat(const BigInt& num, const BigInt& den);

bool is_square_free(long d);

// Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
// d is a square-free integer >= 1 shared by all scalars of a computation;
// d == 1 means plain rationals (b is folded into a and kept at 0).
// Mixing different d in arithmetic or comparisons throws MixedFieldError --
// lifting a rational into another field is explicit via lift_to().
class QuadScalar {
  public:
    QuadScalar() : d_(1) {}
    QuadScalar(long value) : a_(value), d_(1) {}  // NOLINT: implicit by design
    QuadScalar(BigRat a, BigRat b, long d);

    static QuadScalar rational(BigRat a, long d = 1) { return {std::move(a), BigRat(0), d}; }
    static QuadScalar sqrt_term(BigRat b, long d) { return {BigRat(0), std::move(b), d}; }

    const BigRat& a() const { return a_; }
    const BigRat& b() const { return b_; }
    long d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    int sign() const;  // exact sign under the real embedding

    QuadScalar lift_to(long d) const;  // requires b == 0 unless d matches

    QuadScalar operator-() const { return {-a_, -b_, d_}; }
    QuadScalar operator+(const QuadScalar& o) const;
    QuadScalar operator-(const QuadScalar& o) const;
    QuadScalar operator*(const QuadScalar& o) const;
    QuadScalar operator/(const QuadScalar& o) const;
    QuadScalar& operator+=(const QuadScalar& o) { return *this = *this + o; }
    QuadScalar& operator-=(const QuadScalar& o) { return *this = *this - o; }
    QuadScalar& operator*=(const QuadScalar& o) { return *this = *this * o; }
    QuadScalar& operator/=(const QuadScalar& o) { return *this = *this / o; }

    QuadScalar square() const { return *this * *this; }

    bool operator==(const QuadScalar& o) const;
    bool operator!=(const QuadScalar& o) const { return !(*this == o); }
    std::strong_ordering operator<=>(const QuadScalar& o) const;

    // Canonical form "p/q+r/s*sqrt(d)"; zero parts are omitted ("p/q", "r/s*sqrt(d)", "0").
    // Integer components drop the "/1".
    std::string str() const;
    double to_double() const;

  private:
    BigRat a_, b_;
    long d_;

    void check_same_field(const QuadScalar& o) const;
};

// Parses canonical form plus shorthands: "5", "-3/4", "2*sqrt(5)", "sqrt(2)",
// "1/2-3*sqrt(2)". The sqrt argument must equal the context parameter d.
QuadScalar parse_scalar(std::string_view text, long d);

// Nonnegative root of `value` inside Q(sqrt(d)) if one exists.
std::optional<QuadScalar> sqrt_in_field(const QuadScalar& value);

}  // namespace pointspec
