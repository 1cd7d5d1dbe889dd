#pragma once

#include <functional>
#include <vector>

#include "limitid/alphabet.hpp"
#include "limitid/errors.hpp"
#include "limitid/measure.hpp"
#include "limitid/rational.hpp"

namespace test {

inline limitid::Rational R(long num, long den = 1) { return limitid::make_rational(num, den); }

inline std::vector<limitid::Rational> Rs(std::initializer_list<std::pair<long, long>> v) {
  std::vector<limitid::Rational> out;
  for (auto [n, d] : v) out.push_back(R(n, d));
  return out;
}

inline limitid::Alphabet abc() { return limitid::Alphabet::finite({"a", "b", "c"}); }

// Calls visit(x) for every word over {0..l-1} of length <= max_len.
inline void for_each_word(std::size_t l, std::size_t max_len, const std::function<void(const limitid::Sequence&)>& visit) {
  limitid::Sequence x;
  std::function<void()> rec = [&] {
    visit(x);
    if (x.size() == max_len) return;
    for (limitid::Symbol a = 0; a < l; ++a) {
      x.push_back(a);
      rec();
      x.pop_back();
    }
  };
  rec();
}

// mu(empty) = 1 and mu(x) = sum_a mu(xa) for all |x| <= max_len.
inline bool chain_rule_holds(const limitid::MeasureProgram& mu, std::size_t max_len) {
  const std::size_t l = mu.alphabet().size();
  if (mu.probability({}) != 1) return false;
  bool ok = true;
  for_each_word(l, max_len, [&](const limitid::Sequence& x) {
    limitid::Rational total = 0;
    limitid::Sequence xa = x;
    xa.push_back(0);
    for (limitid::Symbol a = 0; a < l; ++a) {
      xa.back() = a;
      total += mu.probability(xa);
    }
    if (total != mu.probability(x)) ok = false;
  });
  return ok;
}

template <class F>
limitid::Errc error_code(F&& f) {
  try {
    f();
  } catch (const limitid::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a limitid::Error");
}

}  // namespace test
