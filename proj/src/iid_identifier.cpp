#include "limitid/iid_identifier.hpp"

#include <algorithm>
#include <cmath>

#include "limitid/errors.hpp"

namespace limitid {

void FrequencyTable::add(Symbol s) {
  if (s >= counts_.size()) counts_.resize(static_cast<std::size_t>(s) + 1, 0);
  ++counts_[s];
  ++n_;
}

std::vector<Symbol> FrequencyTable::observed() const {
  std::vector<Symbol> out;
  for (std::size_t s = 0; s < counts_.size(); ++s)
    if (counts_[s] > 0) out.push_back(static_cast<Symbol>(s));
  return out;
}

std::vector<Rational> FrequencyTable::empirical() const {
  if (n_ == 0) fail(Errc::InvalidArgument, "empirical pmf of an empty table");
  std::vector<Rational> out;
  out.reserve(counts_.size());
  for (std::size_t c : counts_) {
    Rational r{Natural(c), Natural(n_)};
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

double threshold(std::size_t n) {
  if (n == 0) fail(Errc::InvalidArgument, "threshold needs n >= 1");
  const double nd = static_cast<double>(n);
  return std::sqrt(std::log(nd) / nd);
}

std::size_t truncation_length(const PmfProgram& q, std::size_t n, std::size_t start) {
  const Natural nn(n);
  for (std::size_t m = start;; ++m) {
    if (q.alphabet().is_finite() && m >= q.alphabet().size()) return q.alphabet().size();
    const Rational tail = q.tail_mass_after(m);
    if (tail * tail * nn < 1) return m;
  }
}

std::vector<Symbol> trunc_set(const PmfProgram& q, const FrequencyTable& table, std::size_t n) {
  std::vector<Symbol> out = table.observed();
  const std::size_t m = truncation_length(q, n);
  for (std::size_t s = 0; s < m; ++s) out.push_back(static_cast<Symbol>(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Rational deviation(const Rational& mass, std::size_t count, std::size_t n) {
  Rational d = mass - make_rational(static_cast<long>(count), static_cast<long>(n));
  return abs(d);
}

}  // namespace

Rational score(const PmfProgram& q, const FrequencyTable& table, std::size_t n) {
  Rational best = 0;
  for (Symbol s : trunc_set(q, table, n)) {
    Rational d = deviation(q.mass(s), table.count(s), n);
    if (d > best) best = d;
  }
  return best;
}

bool below_threshold(const Rational& score, std::size_t n) {
  const Rational lhs = score * score * Natural(n);
  return less_than(lhs, std::log(static_cast<double>(n)));
}

bool fluctuation_violation(const Rational& p, std::size_t count, std::size_t n, double lambda) {
  const double nd = static_cast<double>(n);
  const double pd = p.get_d();
  const double bound = std::sqrt(2.0 * lambda * std::log(nd) * pd * (1.0 - pd) / nd);
  return !less_than(deviation(p, count, n), bound);
}

IidIdentifier::IidIdentifier(HypothesisList<PmfProgram> list, Alphabet alphabet)
    : list_(std::move(list)), alphabet_(std::move(alphabet)) {
  if (list_.base_entry(1) == nullptr) fail(Errc::EmptyList, "identifier needs at least one hypothesis");
}

void IidIdentifier::update(Symbol s) {
  if (!alphabet_.contains(s)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s) + " not in alphabet");
  table_.add(s);
}

const Rational& IidIdentifier::cached_mass(Cache& c, const PmfProgram& q, Symbol s) {
  while (c.mass.size() <= s) c.mass.push_back(q.mass(static_cast<Symbol>(c.mass.size())));
  return c.mass[s];
}

Rational IidIdentifier::entry_score(const ListEntry<PmfProgram>& e, std::size_t n) {
  Cache& c = cache_[e.origin];
  const PmfProgram& q = e.program;
  // B_{i,n} only grows with n, so the search resumes where it stopped.
  c.trunc = truncation_length(q, n, c.trunc);
  Rational best = 0;
  Rational d;
  auto consider = [&](Symbol s) {
    d = cached_mass(c, q, s) - make_rational(static_cast<long>(table_.count(s)), static_cast<long>(n));
    if (sgn(d) < 0) d = -d;
    if (d > best) best = d;
  };
  for (std::size_t s = 0; s < c.trunc; ++s) consider(static_cast<Symbol>(s));
  const auto& counts = table_.counts();
  for (std::size_t s = c.trunc; s < counts.size(); ++s)
    if (counts[s] > 0) consider(static_cast<Symbol>(s));
  return best;
}

IidStep IidIdentifier::step() {
  const std::size_t n = table_.n();
  if (n == 0) fail(Errc::InvalidArgument, "step before any data");
  IidStep out;
  out.n = n;
  out.threshold = threshold(n);
  bool found = false;
  Rational first_score;
  std::size_t first_origin = 0;
  const std::size_t visited = list_.for_each_survivor(n, n, [&](const ListEntry<PmfProgram>& e, std::size_t ordinal) {
    Rational s = entry_score(e, n);
    if (ordinal == 1) {
      first_score = s;
      first_origin = e.origin;
    }
    if (below_threshold(s, n)) {
      out.index = ordinal;
      out.origin = e.origin;
      out.score = std::move(s);
      found = true;
      return false;
    }
    return true;
  });
  if (visited == 0) fail(Errc::BaseExhausted, "no surviving hypotheses at stage " + std::to_string(n));
  if (!found) {
    out.index = 1;
    out.score = first_score;
    out.origin = first_origin;
    out.fallback = true;
  }
  history_.push_back(out);
  return out;
}

std::vector<IidStep> run_iid(const HypothesisList<PmfProgram>& list, const Alphabet& alphabet,
                             std::span<const Symbol> data, std::size_t n_max) {
  if (data.size() < n_max) fail(Errc::InvalidArgument, "data shorter than n_max");
  IidIdentifier id(list, alphabet);
  for (std::size_t n = 0; n < n_max; ++n) {
    id.update(data[n]);
    id.step();
  }
  return id.history();
}

}  // namespace limitid
