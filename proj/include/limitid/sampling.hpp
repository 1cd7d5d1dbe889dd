#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "limitid/alphabet.hpp"
#include "limitid/measure.hpp"
#include "limitid/pmf.hpp"

namespace limitid {

using u128 = unsigned __int128;

// Deterministic pseudorandom word source. Identical seeds give identical
// streams on every platform (std::mt19937_64 is fully specified).
class SeededSource {
 public:
  static constexpr std::string_view algorithm_id = "mt19937_64";

  explicit SeededSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_word() { return engine_(); }
  // Numerator U of the dyadic uniform u = U / 2^128; high word drawn first.
  u128 next_u128() {
    const u128 hi = next_word();
    const u128 lo = next_word();
    return (hi << 64) | lo;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Parallel trials derive their sources from the experiment seed this way.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) { return seed ^ trial_index; }

// floor(c * 2^128) for a cumulative mass c in [0, 1], capped at 2^128 - 1.
u128 dyadic_threshold(const Rational& cumulative);

// Exact inverse-CDF selector for a pmf: the drawn symbol is the least a_m
// with positive mass whose cumulative mass C_m satisfies C_m >= U / 2^128
// (a tie at a boundary selects the lower symbol). Unbounded alphabets are
// tabulated until the remaining tail drops below 2^-128; any residual goes to
// the next symbol.
class InverseCdf {
 public:
  explicit InverseCdf(const PmfProgram& p);
  Symbol select(u128 u) const;
  std::size_t table_size() const noexcept { return thresholds_.size(); }

 private:
  std::vector<u128> thresholds_;  // thresholds_[m] for symbol m (0-based)
  std::vector<bool> positive_;
  bool truncated_ = false;
};

// Same rule applied to an explicit conditional distribution.
Symbol select_from(std::span<const Rational> probabilities, u128 u);

Sequence draw_iid(const PmfProgram& p, SeededSource& src, std::size_t n);
Sequence draw_from_measure(const MeasureProgram& mu, SeededSource& src, std::size_t n);

}  // namespace limitid
