#include "limitid/rational.hpp"

#include <cmath>
#include <limits>

#include "limitid/errors.hpp"

namespace limitid {

Rational make_rational(long num, long den) {
  if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

double log2_of(const Rational& value) {
  if (sgn(value) <= 0) fail(Errc::InvalidArgument, "log2 of non-positive rational");
  long num_exp = 0;
  long den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
  return std::log2(num_mant) - std::log2(den_mant) + static_cast<double>(num_exp - den_exp);
}

bool less_than(const Rational& lhs, double rhs) {
  if (std::isnan(rhs)) return false;
  if (std::isinf(rhs)) return rhs > 0;
  return cmp(lhs, Rational(rhs)) < 0;
}

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

std::string to_string(const Rational& value) { return value.get_str(); }

namespace {

nlohmann::json integer_to_json(const Natural& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

Natural integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Natural(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Natural(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    Natural z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(Errc::ParseError, "bad integer string");
    return z;
  }
  fail(Errc::ParseError, "expected integer, got " + j.dump());
}

}  // namespace

nlohmann::json rational_to_json(const Rational& value) {
  return {{"num", integer_to_json(value.get_num())}, {"den", integer_to_json(value.get_den())}};
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(integer_from_json(j));
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    fail(Errc::ParseError, "rational must be {\"num\",\"den\"}: " + j.dump());
  const Natural num = integer_from_json(j.at("num"));
  const Natural den = integer_from_json(j.at("den"));
  if (den == 0) fail(Errc::ParseError, "zero denominator in " + j.dump());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace limitid
