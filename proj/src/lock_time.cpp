#include "limitid/lock_time.hpp"

#include "limitid/errors.hpp"

namespace limitid {

std::optional<std::size_t> lock_time(std::span<const std::size_t> guesses) {
  if (guesses.empty()) fail(Errc::InvalidArgument, "lock_time of an empty trace");
  std::size_t start = guesses.size();
  while (start > 1 && guesses[start - 2] == guesses.back()) --start;
  if (start == guesses.size() && guesses.size() > 1) return std::nullopt;
  return start;
}

}  // namespace limitid
