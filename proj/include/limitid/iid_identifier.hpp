#pragma once

#include <map>
#include <span>
#include <vector>

#include "limitid/alphabet.hpp"
#include "limitid/hypothesis_list.hpp"
#include "limitid/pmf.hpp"
#include "limitid/rational.hpp"

namespace limitid {

// Symbol counts #a(x_1..x_n).
class FrequencyTable {
 public:
  void add(Symbol s);
  std::size_t n() const noexcept { return n_; }
  std::size_t count(Symbol s) const noexcept { return s < counts_.size() ? counts_[s] : 0; }
  // Indexed by symbol; trailing zero counts may be absent.
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  // Symbols with a positive count, ascending (the set A_n).
  std::vector<Symbol> observed() const;
  // counts / n over symbols 0..counts().size()-1; sums to exactly 1 when n > 0.
  std::vector<Rational> empirical() const;

 private:
  std::vector<std::size_t> counts_;
  std::size_t n_ = 0;
};

// sqrt(ln n / n) in binary64.
double threshold(std::size_t n);

// Least m with tail_mass_after(m)^2 * n < 1, searched upward from `start`.
std::size_t truncation_length(const PmfProgram& q, std::size_t n, std::size_t start = 0);

// L_{i,n} = A_n united with {a_1..a_m}, ascending.
std::vector<Symbol> trunc_set(const PmfProgram& q, const FrequencyTable& table, std::size_t n);

// max over L_{i,n} of |q(a) - #a/n|.
Rational score(const PmfProgram& q, const FrequencyTable& table, std::size_t n);

// score^2 * n < ln n, exact on the left, ln n in binary64; ties are "not less".
bool below_threshold(const Rational& score, std::size_t n);

// Large-deviation check for a single symbol of mass p:
// |p - c/n| >= sqrt(2 lambda ln n p (1 - p) / n).
bool fluctuation_violation(const Rational& p, std::size_t count, std::size_t n, double lambda);

struct IidStep {
  std::size_t n = 0;
  std::size_t index = 1;  // i_n, 1-based position in list_view(n, n)
  std::size_t origin = 0;  // base index of that candidate
  Rational score;         // score of the chosen candidate
  double threshold = 0.0;
  bool fallback = false;  // no candidate passed; index defaulted to 1
};

// Frequency-threshold identifier over a list of pmfs. Single owner; feed one
// symbol with update() and then call step() once per stage.
class IidIdentifier {
 public:
  IidIdentifier(HypothesisList<PmfProgram> list, Alphabet alphabet);

  // Throws UnknownSymbol.
  void update(Symbol s);
  // Guess for the current stage n = number of symbols seen (n >= 1).
  IidStep step();

  std::size_t stage() const noexcept { return table_.n(); }
  const FrequencyTable& table() const noexcept { return table_; }
  const std::vector<IidStep>& history() const noexcept { return history_; }

 private:
  struct Cache {
    std::vector<Rational> mass;  // mass[s] for s < mass.size()
    std::size_t trunc = 0;       // m of B_{i,n} at the last stage seen
  };

  const Rational& cached_mass(Cache& c, const PmfProgram& q, Symbol s);
  Rational entry_score(const ListEntry<PmfProgram>& e, std::size_t n);

  HypothesisList<PmfProgram> list_;
  Alphabet alphabet_;
  FrequencyTable table_;
  std::map<std::size_t, Cache> cache_;  // keyed by origin
  std::vector<IidStep> history_;
};

// Folds step over stages 1..n_max. Throws InvalidArgument if data is short.
std::vector<IidStep> run_iid(const HypothesisList<PmfProgram>& list, const Alphabet& alphabet,
                             std::span<const Symbol> data, std::size_t n_max);

}  // namespace limitid
