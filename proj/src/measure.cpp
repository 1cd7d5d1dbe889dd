#include "limitid/measure.hpp"

#include "limitid/errors.hpp"

namespace limitid {

namespace {

nlohmann::json row_to_json(const std::vector<Rational>& row) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : row) arr.push_back(rational_to_json(r));
  return arr;
}

void check_row(const std::vector<Rational>& row, std::size_t width, const char* what) {
  if (row.size() != width)
    fail(Errc::InvalidArgument, std::string(what) + " has " + std::to_string(row.size()) +
                                    " entries, expected " + std::to_string(width));
  Rational total = 0;
  for (const auto& r : row) {
    if (sgn(r) < 0) fail(Errc::NegativeMass, std::string(what) + " entry " + to_string(r));
    total += r;
  }
  if (total != 1) fail(Errc::NotNormalized, std::string(what) + " sums to " + to_string(total));
}

class MarkovImpl final : public MeasureProgram::Impl {
 public:
  MarkovImpl(std::vector<Rational> initial, std::vector<std::vector<Rational>> rows)
      : initial_(std::move(initial)), rows_(std::move(rows)) {}

  std::vector<Rational> next(std::span<const Symbol> prefix) const override {
    if (prefix.empty()) return initial_;
    return rows_.at(prefix.back());
  }

 private:
  std::vector<Rational> initial_;
  std::vector<std::vector<Rational>> rows_;
};

class IidImpl final : public MeasureProgram::Impl {
 public:
  explicit IidImpl(std::vector<Rational> masses) : masses_(std::move(masses)) {}
  std::vector<Rational> next(std::span<const Symbol>) const override { return masses_; }

 private:
  std::vector<Rational> masses_;
};

class BlackSwanImpl final : public MeasureProgram::Impl {
 public:
  explicit BlackSwanImpl(std::size_t n_star) : n_star_(n_star) {}

  std::vector<Rational> next(std::span<const Symbol> prefix) const override {
    const Symbol a = 0;
    std::size_t leading_a = 0;
    while (leading_a < prefix.size() && prefix[leading_a] == a) ++leading_a;
    if (leading_a == prefix.size()) {
      if (prefix.size() == n_star_) return {Rational(1, 2), Rational(1, 2)};
      return {Rational(1), Rational(0)};
    }
    // a^n_star b^k continues with b; any other context has zero mass.
    return {Rational(0), Rational(1)};
  }

 private:
  std::size_t n_star_;
};

}  // namespace

MeasureProgram::MeasureProgram(Alphabet alphabet, std::shared_ptr<const Impl> impl,
                               nlohmann::json descriptor)
    : alphabet_(std::move(alphabet)),
      impl_(std::move(impl)),
      descriptor_(std::make_shared<const nlohmann::json>(std::move(descriptor))) {
  if (!alphabet_.is_finite()) fail(Errc::InvalidArgument, "measures need a finite alphabet");
}

Rational MeasureProgram::conditional(Symbol a, std::span<const Symbol> prefix) const {
  if (!alphabet_.contains(a)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(a));
  return impl_->next(prefix)[a];
}

Rational MeasureProgram::probability(std::span<const Symbol> x) const {
  Rational mu = 1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!alphabet_.contains(x[j])) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(x[j]));
    mu *= impl_->next(x.first(j))[x[j]];
    if (sgn(mu) == 0) break;
  }
  return mu;
}

MeasureProgram make_markov_measure(const Alphabet& alphabet, std::vector<Rational> initial,
                                   std::vector<std::vector<Rational>> transitions) {
  const auto l = alphabet.size();
  check_row(initial, l, "initial distribution");
  if (transitions.size() != l)
    fail(Errc::InvalidArgument, "need one transition row per symbol");
  for (const auto& row : transitions) check_row(row, l, "transition row");
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : transitions) rows.push_back(row_to_json(row));
  nlohmann::json desc = {{"kind", "markov"},
                         {"alphabet", alphabet.to_json()},
                         {"params", {{"initial", row_to_json(initial)}, {"transitions", rows}}}};
  return MeasureProgram(alphabet, std::make_shared<MarkovImpl>(std::move(initial), std::move(transitions)),
                        std::move(desc));
}

MeasureProgram lift_iid(const PmfProgram& p) {
  if (!p.alphabet().is_finite()) fail(Errc::InvalidArgument, "i.i.d. lift needs a finite alphabet");
  nlohmann::json desc = {{"kind", "iid_lift"},
                         {"alphabet", p.alphabet().to_json()},
                         {"params", {{"pmf", p.descriptor()}}}};
  return MeasureProgram(p.alphabet(), std::make_shared<IidImpl>(p.masses()), std::move(desc));
}

MeasureProgram make_constant_sequence_measure(const Alphabet& alphabet, Symbol s) {
  const auto l = alphabet.size();
  if (s >= l) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s));
  std::vector<Rational> point(l, Rational(0));
  point[s] = 1;
  std::vector<std::vector<Rational>> rows(l);
  for (std::size_t r = 0; r < l; ++r) {
    rows[r].assign(l, Rational(0));
    rows[r][r] = 1;
  }
  return make_markov_measure(alphabet, std::move(point), std::move(rows));
}

MeasureProgram make_uniform_first_symbol(const Alphabet& alphabet, std::size_t k) {
  const auto l = alphabet.size();
  if (k == 0 || k > l) fail(Errc::AlphabetTooSmall, "uniform-first-symbol needs 1 <= k <= |L|");
  std::vector<Rational> initial(l, Rational(0));
  for (std::size_t c = 0; c < k; ++c) initial[c] = Rational(1, static_cast<unsigned long>(k));
  std::vector<std::vector<Rational>> rows(l);
  for (std::size_t r = 0; r < l; ++r) {
    rows[r].assign(l, Rational(0));
    rows[r][r] = 1;
  }
  return make_markov_measure(alphabet, std::move(initial), std::move(rows));
}

MeasureProgram make_black_swan_mixture(std::size_t n_star) {
  if (n_star == 0) fail(Errc::InvalidArgument, "n_star must be positive");
  const Alphabet ab = binary_alphabet();
  nlohmann::json desc = {{"kind", "black_swan"}, {"alphabet", ab.to_json()}, {"params", {{"n_star", n_star}}}};
  return MeasureProgram(ab, std::make_shared<BlackSwanImpl>(n_star), std::move(desc));
}

}  // namespace limitid
