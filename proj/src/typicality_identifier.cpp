#include "limitid/typicality_identifier.hpp"

#include <algorithm>

#include "limitid/errors.hpp"

namespace limitid {

DeficiencyTrace::DeficiencyTrace(Alphabet alphabet, std::shared_ptr<const ComplexityEstimator> estimator)
    : alphabet_(std::move(alphabet)), estimator_(std::move(estimator)) {
  if (!estimator_) fail(Errc::InvalidArgument, "missing complexity estimator");
  if (!alphabet_.is_finite() || alphabet_.size() > 256)
    fail(Errc::AlphabetTooLarge, "typicality needs a finite alphabet of at most 256 symbols");
}

void DeficiencyTrace::append(Symbol s) {
  if (!alphabet_.contains(s)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s) + " not in alphabet");
  data_.push_back(s);
  bytes_.push_back(static_cast<std::uint8_t>(s));
}

void DeficiencyTrace::sync_complexity(std::size_t n) {
  if (n > data_.size()) fail(Errc::InvalidArgument, "stage beyond observed data");
  const std::size_t budget = estimator_->effective_budget(n);
  if (budget != budget_) {
    budget_ = budget;
    k_.clear();
  }
  const std::span<const std::uint8_t> all(bytes_);
  while (k_.size() < n) k_.push_back(estimator_->estimate(all.first(k_.size() + 1), n));
}

std::uint64_t DeficiencyTrace::complexity(std::size_t j, std::size_t n) {
  if (j == 0 || j > n) fail(Errc::InvalidArgument, "prefix length must be in 1..n");
  sync_complexity(n);
  return k_[j - 1];
}

void DeficiencyTrace::extend(Candidate& c, const MeasureProgram& mu, std::size_t n) {
  const std::span<const Symbol> all(data_);
  while (c.code.size() < n && c.dead_at == 0) {
    const std::size_t j = c.code.size();
    c.mass *= mu.conditional(all[j], all.first(j));
    if (sgn(c.mass) == 0) {
      c.dead_at = j + 1;
      break;
    }
    c.code.push_back(-log2_of(c.mass));
  }
}

double DeficiencyTrace::code_length(const ListEntry<MeasureProgram>& candidate, std::size_t j) {
  if (j == 0 || j > data_.size()) fail(Errc::InvalidArgument, "prefix length must be in 1..length()");
  Candidate& c = candidates_[candidate.origin];
  extend(c, candidate.program, j);
  if (c.dead_at != 0 && c.dead_at <= j) return kImpossible;
  return c.code[j - 1];
}

double DeficiencyTrace::deficiency(const ListEntry<MeasureProgram>& candidate, std::size_t n) {
  if (n == 0) fail(Errc::InvalidArgument, "deficiency needs n >= 1");
  sync_complexity(n);
  Candidate& c = candidates_[candidate.origin];
  extend(c, candidate.program, n);
  if (c.dead_at != 0 && c.dead_at <= n) return kImpossible;
  if (c.best_budget != budget_ || c.best_upto > n) {
    c.best = -kImpossible;
    c.best_upto = 0;
    c.best_budget = budget_;
  }
  for (std::size_t j = c.best_upto; j < n; ++j)
    c.best = std::max(c.best, c.code[j] - static_cast<double>(k_[j]));
  c.best_upto = n;
  return c.best;
}

TypicalityIdentifier::TypicalityIdentifier(HypothesisList<MeasureProgram> list, Alphabet alphabet,
                                           std::shared_ptr<const ComplexityEstimator> estimator)
    : list_(std::move(list)), alphabet_(alphabet), trace_(std::move(alphabet), std::move(estimator)) {
  if (list_.base_entry(1) == nullptr) fail(Errc::EmptyList, "identifier needs at least one hypothesis");
}

void TypicalityIdentifier::update(Symbol s) { trace_.append(s); }

double TypicalityIdentifier::deficiency(std::size_t i) {
  const std::size_t n = stage();
  if (i == 0 || i > n) fail(Errc::InvalidArgument, "candidate index must be in 1..n");
  const auto view = list_.view(n, i);
  return trace_.deficiency(view.back(), n);
}

TypStep TypicalityIdentifier::step() {
  const std::size_t n = stage();
  if (n == 0) fail(Errc::InvalidArgument, "step before any data");
  TypStep out;
  out.n = n;
  bool found = false;
  double first = kImpossible;
  std::size_t first_origin = 0;
  const std::size_t visited =
      list_.for_each_survivor(n, n, [&](const ListEntry<MeasureProgram>& e, std::size_t ordinal) {
        const double d = trace_.deficiency(e, n);
        if (ordinal == 1) {
          first = d;
          first_origin = e.origin;
        }
        if (d < static_cast<double>(ordinal)) {
          out.index = ordinal;
          out.origin = e.origin;
          out.deficiency = d;
          found = true;
          return false;
        }
        return true;
      });
  if (visited == 0) fail(Errc::BaseExhausted, "no surviving hypotheses at stage " + std::to_string(n));
  if (!found) {
    out.index = 1;
    out.deficiency = first;
    out.origin = first_origin;
    out.fallback = true;
  }
  history_.push_back(out);
  return out;
}

std::vector<TypStep> run_typicality(const HypothesisList<MeasureProgram>& list, const Alphabet& alphabet,
                                    std::span<const Symbol> data, std::size_t n_max,
                                    std::shared_ptr<const ComplexityEstimator> estimator) {
  if (data.size() < n_max) fail(Errc::InvalidArgument, "data shorter than n_max");
  TypicalityIdentifier id(repeat_infinitely(list), alphabet, std::move(estimator));
  for (std::size_t n = 0; n < n_max; ++n) {
    id.update(data[n]);
    id.step();
  }
  return id.history();
}

}  // namespace limitid
