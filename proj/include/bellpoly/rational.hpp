// Exact rational scalar used for every probability, weight and efficiency.

#ifndef BELLPOLY_RATIONAL_HPP
#define BELLPOLY_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bellpoly {

/**
 * Arbitrary-precision rational number in canonical form.
 *
 * The denominator is always positive and coprime to the numerator; zero is
 * stored as 0/1. Every constructor and arithmetic operator preserves this.
 */
class Rational {
  public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
    explicit Rational(const mpz_class& integer) : value_(integer) {}
    explicit Rational(mpq_class value);

    /// n/d reduced to lowest terms. Throws std::domain_error("division by zero") if d == 0.
    static Rational canonicalize(const mpz_class& numerator, const mpz_class& denominator);
    static Rational canonicalize(long numerator, long denominator);

    /// Parses "p/q" or "p" (optional leading sign). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    int sign() const { return sgn(value_); }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    double to_double() const { return value_.get_d(); }
    /// Canonical "p/q", or "p" when the denominator is one.
    std::string str() const;
    /// Decimal rendering rounded half-up (away from zero) to `places` digits.
    std::string to_decimal(int places) const;

    const mpq_class& mpq() const { return value_; }
    mpq_class& mpq() { return value_; }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    /// Throws std::domain_error("division by zero").
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    mpq_class value_;
};

Rational abs(const Rational& x);
/// 2^(-k) for k >= 0.
Rational dyadic(unsigned k);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace bellpoly

template <>
struct std::hash<bellpoly::Rational> {
    std::size_t operator()(const bellpoly::Rational& x) const noexcept;
};

#endif  // BELLPOLY_RATIONAL_HPP
