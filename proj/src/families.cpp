#include "limitid/families.hpp"

#include "limitid/errors.hpp"

namespace limitid {

Natural length_lex_index(std::span<const Symbol> word, std::size_t alphabet_size) {
  // Bijective base-l numeral: digits 1..l.
  Natural idx = 0;
  for (Symbol s : word) {
    if (s >= alphabet_size) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s));
    idx = idx * static_cast<unsigned long>(alphabet_size) + (static_cast<unsigned long>(s) + 1);
  }
  return idx;
}

FunctionFamily builtin_family(const std::string& id) {
  if (id == "constant") return {id, [](std::size_t, const Natural&) { return Rational(1); }};
  if (id == "power")
    return {id, [](std::size_t i, const Natural& x) {
              Natural r;
              mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(i - 1));
              return Rational(r);
            }};
  if (id == "mod")
    return {id, [](std::size_t i, const Natural& x) {
              Natural r = x % static_cast<unsigned long>(i + 1);
              return Rational(r);
            }};
  if (id == "shifted")
    return {id, [](std::size_t i, const Natural& x) { return Rational(x + static_cast<unsigned long>(i)); }};
  fail(Errc::InvalidArgument, "unknown function family '" + id + "'");
}

std::vector<std::string> builtin_family_ids() { return {"constant", "power", "mod", "shifted"}; }

namespace {

nlohmann::json family_descriptor(const char* kind, const FunctionFamily& family, std::size_t index,
                                 const Alphabet& alphabet) {
  return {{"kind", kind},
          {"alphabet", alphabet.to_json()},
          {"params", {{"family", family.id}, {"index", index}}}};
}

Rational checked_eval(const FunctionFamily& family, std::size_t index, const Natural& arg) {
  Rational v = family.eval(index, arg);
  if (sgn(v) < 0) fail(Errc::NegativeMass, "family value " + to_string(v));
  return v;
}

class SimpleMeasureImpl final : public MeasureProgram::Impl {
 public:
  SimpleMeasureImpl(FunctionFamily family, std::size_t index, std::size_t alphabet_size)
      : family_(std::move(family)), index_(index), l_(alphabet_size) {}

  std::vector<Rational> next(std::span<const Symbol> prefix) const override {
    const Natural base = length_lex_index(prefix, l_) * static_cast<unsigned long>(l_);
    std::vector<Rational> out(l_);
    Rational total = 0;
    for (std::size_t a = 0; a < l_; ++a) {
      out[a] = checked_eval(family_, index_, base + static_cast<unsigned long>(a + 1));
      total += out[a];
    }
    if (sgn(total) == 0)
      fail(Errc::ZeroNormalizer, "f_" + std::to_string(index_) + " vanishes on every extension of a context");
    for (auto& v : out) v /= total;
    return out;
  }

 private:
  FunctionFamily family_;
  std::size_t index_;
  std::size_t l_;
};

}  // namespace

PmfProgram make_simple_pmf(const FunctionFamily& family, std::size_t index, const Alphabet& alphabet) {
  if (index == 0) fail(Errc::InvalidArgument, "family indices start at 1");
  const auto l = alphabet.size();
  std::vector<Rational> masses(l);
  Rational total = 0;
  for (std::size_t j = 1; j <= l; ++j) {
    masses[j - 1] = checked_eval(family, index, Natural(static_cast<unsigned long>(j)));
    total += masses[j - 1];
  }
  if (sgn(total) == 0) fail(Errc::ZeroNormalizer, "f_" + std::to_string(index) + " vanishes on the alphabet");
  for (auto& m : masses) m /= total;
  return make_categorical_with_descriptor(alphabet, std::move(masses),
                                          family_descriptor("simple_pmf", family, index, alphabet));
}

MeasureProgram make_simple_measure(const FunctionFamily& family, std::size_t index, const Alphabet& alphabet) {
  if (index == 0) fail(Errc::InvalidArgument, "family indices start at 1");
  MeasureProgram mu(alphabet, std::make_shared<SimpleMeasureImpl>(family, index, alphabet.size()),
                    family_descriptor("simple_measure", family, index, alphabet));
  // The root context is checked eagerly; deeper contexts on demand.
  (void)mu.next({});
  return mu;
}

HypothesisList<PmfProgram> make_simple_pmf_family(const FunctionFamily& family, const Alphabet& alphabet) {
  // Validate the first member now so degenerate families fail at build time.
  (void)make_simple_pmf(family, 1, alphabet);
  auto i = std::make_shared<std::size_t>(0);
  return HypothesisList<PmfProgram>::lazy([family, alphabet, i]() -> std::optional<PmfProgram> {
    return make_simple_pmf(family, ++*i, alphabet);
  });
}

HypothesisList<MeasureProgram> make_simple_measure_family(const FunctionFamily& family,
                                                          const Alphabet& alphabet) {
  (void)make_simple_measure(family, 1, alphabet);
  auto i = std::make_shared<std::size_t>(0);
  return HypothesisList<MeasureProgram>::lazy([family, alphabet, i]() -> std::optional<MeasureProgram> {
    return make_simple_measure(family, ++*i, alphabet);
  });
}

}  // namespace limitid
