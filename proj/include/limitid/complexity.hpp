#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "limitid/alphabet.hpp"

namespace limitid {

using Bytes = std::vector<std::uint8_t>;

// One byte per symbol, the symbol's alphabet index. Throws AlphabetTooLarge
// for alphabets beyond 256 symbols (and for unbounded ones).
Bytes serialize_symbols(std::span<const Symbol> x, const Alphabet& alphabet);

// Computable upper bound on time-bounded complexity, in bits. Contract, for
// every x and budget t:
//   estimate(x, t') <= estimate(x, t) whenever t' >= t,
//   estimate(x, t) <= 8 |x| + overhead_bits(),
//   estimate(empty, t) == overhead_bits().
// Implementations are stateless and safe to call concurrently.
class ComplexityEstimator {
 public:
  virtual ~ComplexityEstimator() = default;
  virtual std::string_view id() const = 0;
  virtual std::uint64_t overhead_bits() const = 0;
  virtual std::uint64_t estimate(std::span<const std::uint8_t> x, std::size_t t) const = 0;
  // estimate(x, t) depends on t only through this value, which is
  // nondecreasing in t and constant from some t on.
  virtual std::size_t effective_budget(std::size_t t) const = 0;
};

inline constexpr std::uint64_t kOverheadBits = 8;

// Ids: "compress-default" (raw deflate, level 6, budget ignored),
// "compress-max" (best of deflate levels 1..min(9, t)),
// "enum-tiny" (exhaustive search over a periodic-pattern machine, periods up
// to min(t, 16)). Throws InvalidArgument for an unknown id.
std::shared_ptr<const ComplexityEstimator> make_estimator(std::string_view id);
std::vector<std::string> estimator_ids();
const ComplexityEstimator& default_estimator();

std::uint64_t estimate_complexity(std::span<const Symbol> x, const Alphabet& alphabet, std::size_t t,
                                  const ComplexityEstimator& estimator = default_estimator());

// Raw deflate output length at the given zlib level (1..9).
std::size_t deflate_length(std::span<const std::uint8_t> x, int level);

// Code length of the periodic-pattern program for x with period p (x must
// be p-periodic): gamma(p) + 8p + gamma(|x|).
std::uint64_t periodic_program_bits(std::size_t period, std::size_t length);

}  // namespace limitid
