#include "causalbox/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "causalbox/errors.hpp"

namespace causalbox {

std::string describe(const NamedAssignment& assignment) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [name, value] : assignment) {
    if (!first) os << ", ";
    first = false;
    os << name << '=' << value;
  }
  os << '}';
  return os.str();
}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

namespace {

bool isInteger(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!isInteger(num)) throw ParseError("invalid rational '" + std::string(text) + "'");
  mpq_class value;
  if (slash == std::string_view::npos) {
    value = mpq_class(mpz_class(std::string(num)));
  } else {
    const std::string_view den = text.substr(slash + 1);
    if (!isInteger(den) || den.front() == '-') {
      throw ParseError("invalid rational '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num)), d);
  }
  return Rational(std::move(value));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_str();
}

std::string Rational::numerator() const { return value_.get_num().get_str(); }
std::string Rational::denominator() const { return value_.get_den().get_str(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.isZero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace causalbox
