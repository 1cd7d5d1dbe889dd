#pragma once

#include <span>

#include "limitid/pmf.hpp"

namespace limitid {

// Finite-scale diagonal argument: returns a pmf that differs from every q_i
// in `prefix`. Starts from the uniform pmf on a_1..a_2m (the whole alphabet
// when m = 0) and, for each i, uses the reserved pair (a_{2i-1}, a_{2i}): if
// the masses at a_{2i-1} collide, half of it moves to a_{2i}. Pairs are
// disjoint, so earlier differences persist.
//
// Throws AlphabetTooSmall when the alphabet has fewer than max(2m, 1) symbols.
PmfProgram diagonalize(std::span<const PmfProgram> prefix, const Alphabet& alphabet);

}  // namespace limitid
