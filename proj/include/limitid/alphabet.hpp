#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace limitid {

// Position of a symbol in its alphabet's order, 0-based (a_1 is Symbol 0).
using Symbol = std::uint32_t;
using Sequence = std::vector<Symbol>;

// Ordered set of symbol identifiers a_1 < a_2 < ...; either a finite list of
// distinct names or an unbounded stream named prefix1, prefix2, ...
class Alphabet {
 public:
  static Alphabet finite(std::vector<std::string> names);
  static Alphabet unbounded(std::string prefix = "a");

  bool is_finite() const noexcept { return !unbounded_; }
  // Throws InvalidArgument for unbounded alphabets.
  std::size_t size() const;
  bool contains(Symbol s) const noexcept;

  std::string name(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;
  // Throws UnknownSymbol.
  Symbol symbol(std::string_view name) const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& prefix() const noexcept { return prefix_; }

  nlohmann::json to_json() const;
  static Alphabet from_json(const nlohmann::json& j);

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.unbounded_ == b.unbounded_ && a.names_ == b.names_ && a.prefix_ == b.prefix_;
  }

 private:
  Alphabet() = default;
  bool unbounded_ = false;
  std::vector<std::string> names_;
  std::string prefix_;
};

// Comma-separated symbol names, no whitespace, no trailing newline.
std::string format_sequence(std::span<const Symbol> seq, const Alphabet& alphabet);
Sequence parse_sequence(std::string_view text, const Alphabet& alphabet);

// Convenience for the two-letter alphabet most examples use.
Alphabet binary_alphabet();

}  // namespace limitid
