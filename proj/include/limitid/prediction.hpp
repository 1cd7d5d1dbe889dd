#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "limitid/alphabet.hpp"
#include "limitid/measure.hpp"
#include "limitid/pmf.hpp"
#include "limitid/rational.hpp"

namespace limitid {

// Next-symbol distribution; probabilities[s] for each symbol, summing to 1.
struct Prediction {
  Alphabet alphabet;
  std::vector<Rational> probabilities;
  std::size_t context_length = 0;

  const Rational& operator[](Symbol s) const { return probabilities.at(s); }
};

// The pmf itself, for any context. Finite alphabets only.
Prediction predict_iid(const PmfProgram& p, std::size_t context_length = 0);

// nu(a | x) = mu(xa) / mu(x). Throws ZeroMassContext when mu(x) = 0.
Prediction predict_measure(const MeasureProgram& mu, std::span<const Symbol> x);

struct BlackSwanPair {
  MeasureProgram mu1;  // all a's
  MeasureProgram mu0;  // mixture: all a's, or n_star a's then b forever
};

// Throws InvalidArgument for n_star == 0.
BlackSwanPair black_swan_pair(std::size_t n_star);

// {"context_length": n, "prediction": {"a": {"num":..,"den":..}, ...}}
nlohmann::json to_json(const Prediction& p);
// "a=1/2 b=1/2"
std::string to_string(const Prediction& p);

}  // namespace limitid
