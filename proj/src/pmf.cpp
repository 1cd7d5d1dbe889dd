#include "limitid/pmf.hpp"

#include "limitid/errors.hpp"

namespace limitid {

namespace {

// Finite support a_1..a_K; alphabet may be longer or unbounded.
class CategoricalImpl final : public PmfProgram::Impl {
 public:
  explicit CategoricalImpl(std::vector<Rational> masses) : masses_(std::move(masses)) {
    tails_.resize(masses_.size() + 1);
    tails_[masses_.size()] = 0;
    for (std::size_t m = masses_.size(); m-- > 0;) tails_[m] = tails_[m + 1] + masses_[m];
  }

  Rational mass(Symbol s) const override { return s < masses_.size() ? masses_[s] : Rational(0); }

  Rational tail_mass_after(std::size_t m) const override {
    return m < tails_.size() ? tails_[m] : Rational(0);
  }

 private:
  std::vector<Rational> masses_;
  std::vector<Rational> tails_;  // tails_[m] = sum of masses_[m..]
};

class GeometricImpl final : public PmfProgram::Impl {
 public:
  GeometricImpl(Rational ratio, std::size_t shift) : ratio_(std::move(ratio)), shift_(shift) {}

  Rational mass(Symbol s) const override {
    const std::size_t j = static_cast<std::size_t>(s) + 1;
    if (j <= shift_) return 0;
    return (1 - ratio_) * power(j - 1 - shift_);
  }

  Rational tail_mass_after(std::size_t m) const override {
    if (m <= shift_) return 1;
    return power(m - shift_);
  }

 private:
  Rational power(std::size_t e) const {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), ratio_.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), ratio_.get_den_mpz_t(), e);
    return r;
  }

  Rational ratio_;
  std::size_t shift_;
};

nlohmann::json masses_to_json(const std::vector<Rational>& masses) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : masses) arr.push_back(rational_to_json(m));
  return arr;
}

void check_masses(const std::vector<Rational>& masses) {
  Rational total = 0;
  for (const auto& m : masses) {
    if (sgn(m) < 0) fail(Errc::NegativeMass, "mass " + to_string(m));
    total += m;
  }
  if (total != 1) fail(Errc::NotNormalized, "masses sum to " + to_string(total));
}

}  // namespace

PmfProgram::PmfProgram(Alphabet alphabet, std::shared_ptr<const Impl> impl, nlohmann::json descriptor)
    : alphabet_(std::move(alphabet)),
      impl_(std::move(impl)),
      descriptor_(std::make_shared<const nlohmann::json>(std::move(descriptor))) {}

Rational PmfProgram::mass(Symbol s) const {
  if (!alphabet_.contains(s)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s));
  return impl_->mass(s);
}

std::vector<Rational> PmfProgram::masses() const {
  std::vector<Rational> out(alphabet_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = impl_->mass(static_cast<Symbol>(i));
  return out;
}

bool same_masses(const PmfProgram& a, const PmfProgram& b, std::size_t horizon) {
  if (!(a.alphabet() == b.alphabet())) return false;
  if (a.alphabet().is_finite()) return a.masses() == b.masses();
  for (std::size_t m = 0; m < horizon; ++m) {
    if (a.mass(static_cast<Symbol>(m)) != b.mass(static_cast<Symbol>(m))) return false;
    if (sgn(a.tail_mass_after(m + 1)) == 0 && sgn(b.tail_mass_after(m + 1)) == 0) return true;
  }
  return true;
}

PmfProgram make_categorical(const Alphabet& alphabet, std::vector<Rational> masses) {
  nlohmann::json desc = {{"kind", "categorical"},
                         {"alphabet", alphabet.to_json()},
                         {"params", {{"masses", masses_to_json(masses)}}}};
  return make_categorical_with_descriptor(alphabet, std::move(masses), std::move(desc));
}

PmfProgram make_categorical_with_descriptor(const Alphabet& alphabet, std::vector<Rational> masses,
                                            nlohmann::json descriptor) {
  if (alphabet.is_finite() && masses.size() != alphabet.size())
    fail(Errc::InvalidArgument, "expected " + std::to_string(alphabet.size()) + " masses, got " +
                                    std::to_string(masses.size()));
  if (masses.empty()) fail(Errc::InvalidArgument, "empty mass vector");
  check_masses(masses);
  return PmfProgram(alphabet, std::make_shared<CategoricalImpl>(std::move(masses)),
                    std::move(descriptor));
}

PmfProgram make_geometric(const Alphabet& alphabet, const Rational& ratio, std::size_t shift) {
  if (alphabet.is_finite()) fail(Errc::InvalidArgument, "geometric pmf needs an unbounded alphabet");
  if (sgn(ratio) <= 0 || ratio >= 1) fail(Errc::InvalidArgument, "geometric ratio must be in (0,1)");
  nlohmann::json desc = {{"kind", "geometric"},
                         {"alphabet", alphabet.to_json()},
                         {"params", {{"ratio", rational_to_json(ratio)}, {"shift", shift}}}};
  return PmfProgram(alphabet, std::make_shared<GeometricImpl>(ratio, shift), std::move(desc));
}

PmfProgram make_uniform(const Alphabet& alphabet) {
  const auto l = alphabet.size();
  return make_categorical(alphabet, std::vector<Rational>(l, Rational(1, static_cast<unsigned long>(l))));
}

PmfProgram make_point_mass(const Alphabet& alphabet, Symbol s) {
  std::vector<Rational> masses(alphabet.size(), Rational(0));
  if (s >= masses.size()) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s));
  masses[s] = 1;
  return make_categorical(alphabet, std::move(masses));
}

}  // namespace limitid
