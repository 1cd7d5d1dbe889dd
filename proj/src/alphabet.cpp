#include "limitid/alphabet.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "limitid/errors.hpp"

namespace limitid {

Alphabet Alphabet::finite(std::vector<std::string> names) {
  if (names.empty()) fail(Errc::InvalidArgument, "alphabet needs at least one symbol");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty() || n.find(',') != std::string::npos)
      fail(Errc::InvalidArgument, "symbol names must be nonempty and comma-free");
    if (!seen.insert(n).second) fail(Errc::InvalidArgument, "duplicate symbol '" + n + "'");
  }
  Alphabet a;
  a.names_ = std::move(names);
  return a;
}

Alphabet Alphabet::unbounded(std::string prefix) {
  if (prefix.empty() || prefix.find(',') != std::string::npos)
    fail(Errc::InvalidArgument, "unbounded alphabet prefix must be nonempty and comma-free");
  Alphabet a;
  a.unbounded_ = true;
  a.prefix_ = std::move(prefix);
  return a;
}

std::size_t Alphabet::size() const {
  if (unbounded_) fail(Errc::InvalidArgument, "unbounded alphabet has no size");
  return names_.size();
}

bool Alphabet::contains(Symbol s) const noexcept { return unbounded_ || s < names_.size(); }

std::string Alphabet::name(Symbol s) const {
  if (!contains(s)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s));
  if (unbounded_) return prefix_ + std::to_string(static_cast<std::uint64_t>(s) + 1);
  return names_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  if (!unbounded_) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Symbol>(it - names_.begin());
  }
  if (name.size() <= prefix_.size() || name.substr(0, prefix_.size()) != prefix_) return std::nullopt;
  const auto digits = name.substr(prefix_.size());
  if (digits.front() == '0') return std::nullopt;
  std::uint64_t pos = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), pos);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || pos == 0 ||
      pos > std::uint64_t{1} << 32)
    return std::nullopt;
  return static_cast<Symbol>(pos - 1);
}

Symbol Alphabet::symbol(std::string_view name) const {
  auto s = find(name);
  if (!s) fail(Errc::UnknownSymbol, "'" + std::string(name) + "' is not in the alphabet");
  return *s;
}

nlohmann::json Alphabet::to_json() const {
  if (unbounded_) return {{"unbounded_prefix", prefix_}};
  return names_;
}

Alphabet Alphabet::from_json(const nlohmann::json& j) {
  if (j.is_array()) return finite(j.get<std::vector<std::string>>());
  if (j.is_object() && j.contains("unbounded_prefix"))
    return unbounded(j.at("unbounded_prefix").get<std::string>());
  fail(Errc::ParseError, "alphabet must be a list of names or {\"unbounded_prefix\": ...}");
}

std::string format_sequence(std::span<const Symbol> seq, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(',');
    out += alphabet.name(seq[i]);
  }
  return out;
}

Sequence parse_sequence(std::string_view text, const Alphabet& alphabet) {
  Sequence out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(alphabet.symbol(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Alphabet binary_alphabet() { return Alphabet::finite({"a", "b"}); }

}  // namespace limitid
