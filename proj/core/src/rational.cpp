#include "clawdeg/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "clawdeg/errors.hpp"

namespace clawdeg {

Rational make_rational(long num, long den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num)) {
    throw ParseError("expected integer numerator in '" + std::string(text) + "'", 1, negative ? 2 : 1);
  }
  if (!all_digits(den)) {
    throw ParseError("expected integer denominator in '" + std::string(text) + "'", 1,
                     (negative ? 2 : 1) + num.size() + 1);
  }
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'", 1, (negative ? 2 : 1) + num.size() + 1);
  }
  if (negative) {
    n = -n;
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) {
    return 0;
  }
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

} // namespace clawdeg
