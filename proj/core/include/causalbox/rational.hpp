#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace causalbox {

/// Exact rational number, always stored in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Accepts "n", "-n" or "n/d" with arbitrary-size integers; whitespace is not allowed.
  static Rational parse(std::string_view text);

  /// "n" for integers, "n/d" otherwise.
  std::string str() const;

  std::string numerator() const;
  std::string denominator() const;
  bool isZero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  double toDouble() const { return value_.get_d(); }

  const mpq_class& mpq() const { return value_; }
  mpq_class& mpq() { return value_; }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace causalbox
