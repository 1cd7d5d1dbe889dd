#include "limitid/sampling.hpp"

#include <algorithm>
#include <cassert>

#include "limitid/errors.hpp"

namespace limitid {

static_assert(sizeof(unsigned long) == 8, "expects an LP64 platform");

namespace {

constexpr u128 kMax128 = ~u128{0};

u128 to_u128_capped(const Natural& z) {
  if (sgn(z) <= 0) return 0;
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 128) return kMax128;
  const Natural hi = z >> 64;
  const Natural lo = z - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
}

}  // namespace

u128 dyadic_threshold(const Rational& cumulative) {
  Natural scaled = cumulative.get_num() << 128;
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), cumulative.get_den_mpz_t());
  return to_u128_capped(scaled);
}

InverseCdf::InverseCdf(const PmfProgram& p) {
  const Alphabet& alphabet = p.alphabet();
  Rational cumulative = 0;
  const Rational resolution = Rational(1) / Rational(Natural(1) << 128);
  for (std::size_t m = 0;; ++m) {
    if (alphabet.is_finite() && m == alphabet.size()) break;
    const Rational mass = p.mass(static_cast<Symbol>(m));
    cumulative += mass;
    thresholds_.push_back(dyadic_threshold(cumulative));
    positive_.push_back(sgn(mass) > 0);
    if (!alphabet.is_finite() && p.tail_mass_after(m + 1) < resolution) {
      truncated_ = true;
      break;
    }
  }
}

Symbol InverseCdf::select(u128 u) const {
  auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), u);
  std::size_t m = static_cast<std::size_t>(it - thresholds_.begin());
  while (m < positive_.size() && !positive_[m]) ++m;
  if (m >= positive_.size()) {
    // Only reachable past a truncated tail.
    assert(truncated_);
    return static_cast<Symbol>(positive_.size());
  }
  return static_cast<Symbol>(m);
}

Symbol select_from(std::span<const Rational> probabilities, u128 u) {
  Rational cumulative = 0;
  bool reached = false;
  for (std::size_t a = 0; a < probabilities.size(); ++a) {
    cumulative += probabilities[a];
    if (!reached && dyadic_threshold(cumulative) >= u) reached = true;
    if (reached && sgn(probabilities[a]) > 0) return static_cast<Symbol>(a);
  }
  // The conditionals sum to one, so the last positive entry is always reached.
  assert(false && "conditional distribution does not sum to one");
  return static_cast<Symbol>(probabilities.size() - 1);
}

Sequence draw_iid(const PmfProgram& p, SeededSource& src, std::size_t n) {
  const InverseCdf table(p);
  Sequence out(n);
  for (auto& s : out) s = table.select(src.next_u128());
  return out;
}

Sequence draw_from_measure(const MeasureProgram& mu, SeededSource& src, std::size_t n) {
  Sequence out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto nu = mu.next(out);
    out.push_back(select_from(nu, src.next_u128()));
  }
  return out;
}

}  // namespace limitid
