#include "limitid/complexity.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>

#include "limitid/errors.hpp"

namespace limitid {

Bytes serialize_symbols(std::span<const Symbol> x, const Alphabet& alphabet) {
  if (!alphabet.is_finite() || alphabet.size() > 256)
    fail(Errc::AlphabetTooLarge, "byte serialization needs at most 256 symbols");
  Bytes out;
  out.reserve(x.size());
  for (Symbol s : x) {
    if (!alphabet.contains(s)) fail(Errc::UnknownSymbol, "symbol index " + std::to_string(s) + " not in alphabet");
    out.push_back(static_cast<std::uint8_t>(s));
  }
  return out;
}

namespace {

// One reusable deflate state per level and thread.
class Deflater {
 public:
  explicit Deflater(int level) {
    stream_ = {};
    if (deflateInit2(&stream_, level, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
      fail(Errc::InvalidArgument, "deflateInit2 failed");
  }
  ~Deflater() { deflateEnd(&stream_); }
  Deflater(const Deflater&) = delete;
  Deflater& operator=(const Deflater&) = delete;

  std::size_t length(std::span<const std::uint8_t> x) {
    deflateReset(&stream_);
    const uLong bound = deflateBound(&stream_, static_cast<uLong>(x.size()));
    if (out_.size() < bound) out_.resize(bound);
    stream_.next_in = const_cast<Bytef*>(x.data());
    stream_.avail_in = static_cast<uInt>(x.size());
    stream_.next_out = out_.data();
    stream_.avail_out = static_cast<uInt>(out_.size());
    if (deflate(&stream_, Z_FINISH) != Z_STREAM_END) fail(Errc::InvalidArgument, "deflate did not finish");
    return out_.size() - stream_.avail_out;
  }

 private:
  z_stream stream_;
  std::vector<Bytef> out_;
};

std::uint64_t with_copy_bound(std::uint64_t code_bits, std::size_t length) {
  return kOverheadBits + std::min<std::uint64_t>(code_bits, 8 * static_cast<std::uint64_t>(length));
}

class CompressDefault final : public ComplexityEstimator {
 public:
  std::string_view id() const override { return "compress-default"; }
  std::uint64_t overhead_bits() const override { return kOverheadBits; }
  std::uint64_t estimate(std::span<const std::uint8_t> x, std::size_t) const override {
    if (x.empty()) return kOverheadBits;
    return with_copy_bound(8 * deflate_length(x, 6), x.size());
  }
  std::size_t effective_budget(std::size_t) const override { return 1; }
};

class CompressMax final : public ComplexityEstimator {
 public:
  std::string_view id() const override { return "compress-max"; }
  std::uint64_t overhead_bits() const override { return kOverheadBits; }
  std::uint64_t estimate(std::span<const std::uint8_t> x, std::size_t t) const override {
    if (x.empty()) return kOverheadBits;
    const int top = static_cast<int>(effective_budget(t));
    std::size_t best = deflate_length(x, 1);
    for (int level = 2; level <= top; ++level) best = std::min(best, deflate_length(x, level));
    return with_copy_bound(8 * best, x.size());
  }
  std::size_t effective_budget(std::size_t t) const override { return std::clamp<std::size_t>(t, 1, 9); }
};

class EnumTiny final : public ComplexityEstimator {
 public:
  static constexpr std::size_t kMaxPeriod = 16;

  std::string_view id() const override { return "enum-tiny"; }
  std::uint64_t overhead_bits() const override { return kOverheadBits; }
  std::uint64_t estimate(std::span<const std::uint8_t> x, std::size_t t) const override {
    if (x.empty()) return kOverheadBits;
    const std::size_t max_period = std::min(effective_budget(t), x.size());
    std::uint64_t best = 8 * static_cast<std::uint64_t>(x.size());
    for (std::size_t p = 1; p <= max_period; ++p) {
      bool periodic = true;
      for (std::size_t j = p; j < x.size() && periodic; ++j) periodic = x[j] == x[j - p];
      if (periodic) best = std::min(best, periodic_program_bits(p, x.size()));
    }
    return with_copy_bound(best, x.size());
  }
  std::size_t effective_budget(std::size_t t) const override { return std::clamp<std::size_t>(t, 1, kMaxPeriod); }
};

std::uint64_t gamma_bits(std::size_t k) { return 2 * static_cast<std::uint64_t>(std::bit_width(k) - 1) + 1; }

}  // namespace

std::size_t deflate_length(std::span<const std::uint8_t> x, int level) {
  if (level < 1 || level > 9) fail(Errc::InvalidArgument, "deflate level must be 1..9");
  thread_local std::array<std::unique_ptr<Deflater>, 10> deflaters;
  auto& d = deflaters[static_cast<std::size_t>(level)];
  if (!d) d = std::make_unique<Deflater>(level);
  return d->length(x);
}

std::uint64_t periodic_program_bits(std::size_t period, std::size_t length) {
  if (period == 0 || length == 0) fail(Errc::InvalidArgument, "period and length must be positive");
  return gamma_bits(period) + 8 * static_cast<std::uint64_t>(period) + gamma_bits(length);
}

std::shared_ptr<const ComplexityEstimator> make_estimator(std::string_view id) {
  if (id == "compress-default") return std::make_shared<CompressDefault>();
  if (id == "compress-max") return std::make_shared<CompressMax>();
  if (id == "enum-tiny") return std::make_shared<EnumTiny>();
  fail(Errc::InvalidArgument, "unknown estimator '" + std::string(id) + "'");
}

std::vector<std::string> estimator_ids() { return {"compress-default", "compress-max", "enum-tiny"}; }

const ComplexityEstimator& default_estimator() {
  static const CompressDefault instance;
  return instance;
}

std::uint64_t estimate_complexity(std::span<const Symbol> x, const Alphabet& alphabet, std::size_t t,
                                  const ComplexityEstimator& estimator) {
  const Bytes bytes = serialize_symbols(x, alphabet);
  return estimator.estimate(bytes, t);
}

}  // namespace limitid
