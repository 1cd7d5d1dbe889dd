#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "limitid/alphabet.hpp"
#include "limitid/pmf.hpp"
#include "limitid/rational.hpp"

namespace limitid {

// A measure on infinite sequences over a finite alphabet, given by exact
// next-symbol conditionals nu(a | x). mu(x) is the chain-rule product, so
// mu(empty) = 1 and mu(x) = sum_a mu(xa) hold by construction.
class MeasureProgram {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    // One entry per alphabet symbol, summing to exactly 1. Contexts with
    // zero mass still receive a valid distribution.
    virtual std::vector<Rational> next(std::span<const Symbol> prefix) const = 0;
  };

  MeasureProgram(Alphabet alphabet, std::shared_ptr<const Impl> impl, nlohmann::json descriptor);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::vector<Rational> next(std::span<const Symbol> prefix) const { return impl_->next(prefix); }
  Rational conditional(Symbol a, std::span<const Symbol> prefix) const;
  Rational probability(std::span<const Symbol> x) const;

  const nlohmann::json& descriptor() const noexcept { return *descriptor_; }
  std::string code() const { return descriptor_->dump(); }

 private:
  Alphabet alphabet_;
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<const nlohmann::json> descriptor_;
};

// Throws NotNormalized / NegativeMass for a bad initial pmf or row,
// InvalidArgument on shape mismatch.
MeasureProgram make_markov_measure(const Alphabet& alphabet, std::vector<Rational> initial,
                                   std::vector<std::vector<Rational>> transitions);

// nu(a | x) = p(a) for every x. Finite alphabets only.
MeasureProgram lift_iid(const PmfProgram& p);

// Point mass on s s s ...
MeasureProgram make_constant_sequence_measure(const Alphabet& alphabet, Symbol s);

// First symbol uniform over the first k symbols, then repeated forever:
// mu_k(c^n) = 1/k for each of those c and 0 for any other string.
MeasureProgram make_uniform_first_symbol(const Alphabet& alphabet, std::size_t k);

// Two-branch mixture over {a, b}: with probability 1/2 emit a forever, with
// probability 1/2 emit n_star a's and then b forever.
MeasureProgram make_black_swan_mixture(std::size_t n_star);

}  // namespace limitid
