#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "limitid/alphabet.hpp"
#include "limitid/rational.hpp"

namespace limitid {

// An exactly evaluable probability mass function over an ordered alphabet.
// Cheap to copy; the evaluation core is shared and immutable.
class PmfProgram {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual Rational mass(Symbol s) const = 0;
    // Mass of a_{m+1}, a_{m+2}, ... (exact).
    virtual Rational tail_mass_after(std::size_t m) const = 0;
  };

  PmfProgram(Alphabet alphabet, std::shared_ptr<const Impl> impl, nlohmann::json descriptor);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Rational mass(Symbol s) const;
  Rational tail_mass_after(std::size_t m) const { return impl_->tail_mass_after(m); }

  // Finite alphabets only.
  std::vector<Rational> masses() const;

  const nlohmann::json& descriptor() const noexcept { return *descriptor_; }
  // Canonical text form of the descriptor.
  std::string code() const { return descriptor_->dump(); }

 private:
  Alphabet alphabet_;
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<const nlohmann::json> descriptor_;
};

// Exact equality of mass functions. For unbounded alphabets the comparison
// walks symbols until both remaining tails vanish or `horizon` is reached.
bool same_masses(const PmfProgram& a, const PmfProgram& b, std::size_t horizon = 4096);

// Throws NegativeMass, NotNormalized, InvalidArgument (length mismatch).
PmfProgram make_categorical(const Alphabet& alphabet, std::vector<Rational> masses);

// Same checks, with a caller-supplied descriptor (used by family builders).
PmfProgram make_categorical_with_descriptor(const Alphabet& alphabet, std::vector<Rational> masses,
                                            nlohmann::json descriptor);

// Unbounded alphabet: q(a_j) = 0 for j <= shift, (1 - r) r^(j - 1 - shift) after.
// ratio 1/2, shift 0 gives q(a_j) = 2^-j.
PmfProgram make_geometric(const Alphabet& alphabet, const Rational& ratio, std::size_t shift = 0);

// Finite alphabets only.
PmfProgram make_uniform(const Alphabet& alphabet);
PmfProgram make_point_mass(const Alphabet& alphabet, Symbol s);

}  // namespace limitid
