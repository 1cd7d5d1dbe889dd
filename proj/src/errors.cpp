#include "limitid/errors.hpp"

namespace limitid {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::ZeroNormalizer: return "ZeroNormalizer";
    case Errc::BaseExhausted: return "BaseExhausted";
    case Errc::EmptyList: return "EmptyList";
    case Errc::AlphabetTooSmall: return "AlphabetTooSmall";
    case Errc::AlphabetTooLarge: return "AlphabetTooLarge";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::ZeroMassContext: return "ZeroMassContext";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace limitid
