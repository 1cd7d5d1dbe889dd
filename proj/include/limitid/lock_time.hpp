#pragma once

#include <optional>
#include <span>

namespace limitid {

// Guesses i_1..i_{n_max} of one trial. Returns the least n such that i_m is
// constant for m in [n, n_max], or nullopt when the guess changes at n_max
// (n_max > 1). Throws InvalidArgument for an empty trace.
std::optional<std::size_t> lock_time(std::span<const std::size_t> guesses);

}  // namespace limitid
