#include "dsw/rational.hpp"

#include <limits>

#include "dsw/error.hpp"

namespace dsw {

Rational ratio(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw Error(ErrorKind::invalid_argument, "ratio: zero denominator");
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorKind::invalid_argument, "not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty())
    throw bad();
  std::size_t slash = text.find('/');
  auto check_digits = [&](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+'))
      i = 1;
    if (i == part.size())
      throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw bad();
  };
  std::string_view num = text.substr(0, slash);
  check_digits(num, true);
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  if (slash == std::string_view::npos)
    return Rational(Integer(num_str));
  std::string_view den = text.substr(slash + 1);
  check_digits(den, false);
  Integer d(std::string{den});
  if (d == 0)
    throw bad();
  Rational q(Integer(num_str), d);
  q.canonicalize();
  return q;
}

Rational pow2(std::int64_t e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0)
    return Rational(p);
  return Rational(Integer(1), p);
}

Rational factorial(std::uint32_t n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p())
    throw Error(ErrorKind::invalid_argument, "integer out of 64-bit range: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q))
    throw Error(ErrorKind::invalid_argument, "expected an integer, got " + q.get_str());
  return to_int64(q.get_num());
}

} // namespace dsw
