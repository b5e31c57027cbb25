#include "twoperiodic/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace twoperiodic {

double log_of(const Rational& v) {
  // log(num) - log(den) via mpz_get_d_2exp keeps this finite for any size.
  auto log_z = [](const mpz_class& z) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
  };
  return log_z(v.get_num()) - log_z(v.get_den());
}

std::size_t numerator_bits(const Rational& v) {
  return mpz_sizeinbase(v.get_num_mpz_t(), 2);
}

Rational pow_int(const Rational& base, long exponent) {
  if (base == 0 && exponent < 0) {
    throw std::domain_error("pow_int: zero base with negative exponent");
  }
  const unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                       : static_cast<unsigned long>(exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational out = exponent < 0 ? Rational(den, num) : Rational(num, den);
  out.canonicalize();
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  // Canonical form: sqrt(p/q) is rational iff both p and q are perfect squares.
  if (mpz_perfect_square_p(v.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(v.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class num;
  mpz_class den;
  mpz_sqrt(num.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), v.get_den_mpz_t());
  return Rational(num, den);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

Rational parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
    const auto* first = exp_part.data();
    const auto* last = first + exp_part.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (exp_part.empty() || ec != std::errc{} || ptr != last) {
      throw std::invalid_argument("malformed exponent");
    }
    s = s.substr(0, e);
  }
  std::string digits;
  std::string_view int_part = s;
  std::string_view frac_part;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("empty number");
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw std::invalid_argument("malformed decimal");
  }
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());
  Rational out(mpz_class(digits, 10));
  if (exponent != 0) out *= pow_int(Rational(10), exponent);
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    const mpz_class den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  return parse_decimal(text);
}

double parse_double(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_rational(text).get_d();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double out = 0.0;
  const auto* first = text.data();
  const auto* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed number");
  }
  return out;
}

std::string format_scalar(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_scalar(const Rational& v) {
  Rational c = v;  // values built from (p, q) pairs may not be reduced
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace twoperiodic
