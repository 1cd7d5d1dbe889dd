#include "limitid/prediction.hpp"

#include "limitid/errors.hpp"

namespace limitid {

Prediction predict_iid(const PmfProgram& p, std::size_t context_length) {
  if (!p.alphabet().is_finite()) fail(Errc::InvalidArgument, "prediction needs a finite alphabet");
  return Prediction{p.alphabet(), p.masses(), context_length};
}

Prediction predict_measure(const MeasureProgram& mu, std::span<const Symbol> x) {
  for (Symbol s : x)
    if (!mu.alphabet().contains(s)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s) + " not in alphabet");
  if (sgn(mu.probability(x)) == 0) fail(Errc::ZeroMassContext, "context has zero mass");
  return Prediction{mu.alphabet(), mu.next(x), x.size()};
}

BlackSwanPair black_swan_pair(std::size_t n_star) {
  if (n_star == 0) fail(Errc::InvalidArgument, "n_star must be positive");
  return BlackSwanPair{make_constant_sequence_measure(binary_alphabet(), 0), make_black_swan_mixture(n_star)};
}

nlohmann::json to_json(const Prediction& p) {
  nlohmann::json probs = nlohmann::json::object();
  for (std::size_t s = 0; s < p.probabilities.size(); ++s)
    probs[p.alphabet.name(static_cast<Symbol>(s))] = rational_to_json(p.probabilities[s]);
  return {{"context_length", p.context_length}, {"prediction", probs}};
}

std::string to_string(const Prediction& p) {
  std::string out;
  for (std::size_t s = 0; s < p.probabilities.size(); ++s) {
    if (s) out += ' ';
    out += p.alphabet.name(static_cast<Symbol>(s)) + "=" + limitid::to_string(p.probabilities[s]);
  }
  return out;
}

}  // namespace limitid
