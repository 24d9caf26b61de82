#include "cmx/rational.hpp"

#include <cctype>
#include <string>

#include "cmx/errors.hpp"

namespace cmx {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw UsageError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) throw UsageError("malformed rational: '" + std::string(whole) + "'");
  Integer value(std::string(body), 10);
  return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  std::string_view mantissa = s.substr(0, epos);
  if (epos != std::string_view::npos) {
    std::string_view e = s.substr(epos + 1);
    Integer ev = parse_integer(e, whole);
    if (!ev.fits_slong_p()) throw UsageError("exponent out of range: '" + std::string(whole) + "'");
    exponent = ev.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  auto dot = mantissa.find('.');
  std::string digits(mantissa.substr(0, dot));
  if (dot != std::string_view::npos) {
    std::string_view frac = mantissa.substr(dot + 1);
    digits += frac;
    exponent -= static_cast<long>(frac.size());
  }
  if (!all_digits(digits)) throw UsageError("malformed rational: '" + std::string(whole) + "'");
  Integer num(digits, 10);
  if (negative) num = -num;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? make_rational(num, scale) : Rational(num * scale);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw UsageError("empty rational");
  auto slash = text.find('/');
  if (slash != std::string_view::npos)
    return make_rational(parse_integer(text.substr(0, slash), text), parse_integer(text.substr(slash + 1), text));
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text, text);
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace cmx
