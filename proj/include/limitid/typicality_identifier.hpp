#pragma once

#include <limits>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "limitid/alphabet.hpp"
#include "limitid/complexity.hpp"
#include "limitid/hypothesis_list.hpp"
#include "limitid/measure.hpp"
#include "limitid/rational.hpp"

namespace limitid {

inline constexpr double kImpossible = std::numeric_limits<double>::infinity();

// Per-candidate staged deficiencies for one data stream. For each candidate
// (keyed by origin) it keeps the exact running mass mu(x_1..x_j) and the
// code lengths log2 1/mu(x_1..x_j); complexity estimates K_t(x_1..x_j) are
// shared across candidates and recomputed only when the estimator's
// effective budget changes.
class DeficiencyTrace {
 public:
  DeficiencyTrace(Alphabet alphabet, std::shared_ptr<const ComplexityEstimator> estimator);

  void append(Symbol s);
  std::size_t length() const noexcept { return data_.size(); }
  std::span<const Symbol> data() const noexcept { return data_; }

  // max_{1<=j<=n} log2 1/mu(x_1..x_j) - K_{t(n)}(x_1..x_j), t(n) = n;
  // kImpossible once some prefix has mass zero. Requires n <= length().
  double deficiency(const ListEntry<MeasureProgram>& candidate, std::size_t n);

  // K_{t(n)}(x_1..x_j) as used at stage n (j <= n <= length()).
  std::uint64_t complexity(std::size_t j, std::size_t n);
  // log2 1/mu(x_1..x_j) for a candidate, or kImpossible.
  double code_length(const ListEntry<MeasureProgram>& candidate, std::size_t j);

 private:
  struct Candidate {
    Rational mass = 1;
    std::vector<double> code;  // code[j-1] = log2 1/mu(x_1..x_j)
    std::size_t dead_at = 0;   // first j with zero mass, 0 if none yet
    double best = -kImpossible;
    std::size_t best_upto = 0;  // best covers j <= best_upto
    std::size_t best_budget = 0;
  };

  void sync_complexity(std::size_t n);
  void extend(Candidate& c, const MeasureProgram& mu, std::size_t n);

  Alphabet alphabet_;
  std::shared_ptr<const ComplexityEstimator> estimator_;
  Sequence data_;
  Bytes bytes_;
  std::vector<std::uint64_t> k_;  // k_[j-1] = K_budget(x_1..x_j)
  std::size_t budget_ = 0;
  std::map<std::size_t, Candidate> candidates_;
};

struct TypStep {
  std::size_t n = 0;
  std::size_t index = 1;    // i_n, 1-based position in list_view(n, n)
  std::size_t origin = 0;   // base index of that candidate
  double deficiency = 0.0;  // deficiency of the chosen candidate
  bool fallback = false;    // no candidate passed its bound
};

// Least-index typicality identifier. The list is used as given; run()
// applies repeat_infinitely first.
class TypicalityIdentifier {
 public:
  TypicalityIdentifier(HypothesisList<MeasureProgram> list, Alphabet alphabet,
                       std::shared_ptr<const ComplexityEstimator> estimator);

  // Throws UnknownSymbol.
  void update(Symbol s);
  TypStep step();
  // Deficiency of the i-th candidate of list_view(n, n) at the current stage.
  double deficiency(std::size_t i);

  std::size_t stage() const noexcept { return trace_.length(); }
  const std::vector<TypStep>& history() const noexcept { return history_; }
  DeficiencyTrace& trace() noexcept { return trace_; }

 private:
  HypothesisList<MeasureProgram> list_;
  Alphabet alphabet_;
  DeficiencyTrace trace_;
  std::vector<TypStep> history_;
};

// Wraps the list in repeat_infinitely (EmptyList if empty) and folds step
// over stages 1..n_max.
std::vector<TypStep> run_typicality(const HypothesisList<MeasureProgram>& list, const Alphabet& alphabet,
                                    std::span<const Symbol> data, std::size_t n_max,
                                    std::shared_ptr<const ComplexityEstimator> estimator);

}  // namespace limitid
