#include "limitid/diagonalize.hpp"

#include "limitid/errors.hpp"

namespace limitid {

PmfProgram diagonalize(std::span<const PmfProgram> prefix, const Alphabet& alphabet) {
  const std::size_t m = prefix.size();
  const std::size_t needed = std::max<std::size_t>(2 * m, 1);
  if (alphabet.is_finite() && alphabet.size() < needed)
    fail(Errc::AlphabetTooSmall, "need " + std::to_string(needed) + " symbols, have " +
                                     std::to_string(alphabet.size()));

  // Support width: 2m reserved symbols, or everything for m = 0. Unbounded
  // alphabets with m = 0 get a point mass on a_1.
  std::size_t width = 2 * m;
  if (m == 0) width = alphabet.is_finite() ? alphabet.size() : 1;

  std::vector<Rational> p(width, Rational(1, static_cast<unsigned long>(width)));
  for (std::size_t i = 0; i < m; ++i) {
    const Symbol odd = static_cast<Symbol>(2 * i);
    if (p[odd] == prefix[i].mass(odd)) {
      Rational half = p[odd] / 2;
      p[odd] -= half;
      p[odd + 1] += half;
    }
  }
  if (alphabet.is_finite()) p.resize(alphabet.size(), Rational(0));

  nlohmann::json masses = nlohmann::json::array();
  for (const auto& v : p) masses.push_back(rational_to_json(v));
  nlohmann::json desc = {{"kind", "categorical"}, {"alphabet", alphabet.to_json()}, {"params", {{"masses", masses}}}};
  return make_categorical_with_descriptor(alphabet, std::move(p), std::move(desc));
}

}  // namespace limitid
