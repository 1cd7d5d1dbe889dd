#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace limitid {

enum class Errc {
  NotNormalized,
  NegativeMass,
  ZeroNormalizer,
  BaseExhausted,
  EmptyList,
  AlphabetTooSmall,
  AlphabetTooLarge,
  UnknownSymbol,
  ZeroMassContext,
  InvalidArgument,
  ParseError,
  ConfigError,
};

std::string_view to_string(Errc code);

// All library failures surface as this exception; code() names the contract
// violation so callers (and tests) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace limitid
