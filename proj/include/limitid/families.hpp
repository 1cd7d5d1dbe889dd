#pragma once

#include <functional>
#include <span>
#include <string>

#include "limitid/alphabet.hpp"
#include "limitid/hypothesis_list.hpp"
#include "limitid/measure.hpp"
#include "limitid/pmf.hpp"
#include "limitid/rational.hpp"

namespace limitid {

// A total family f_1, f_2, ... of nonnegative rational functions of a natural
// argument. Strings enter through their length-increasing lexicographic index.
struct FunctionFamily {
  std::string id;  // builtin registry name, or empty for ad hoc families
  std::function<Rational(std::size_t index, const Natural& argument)> eval;
};

// Empty string -> 0, single symbols -> 1..l, then length-2 strings, etc.
Natural length_lex_index(std::span<const Symbol> word, std::size_t alphabet_size);

// Registry: "constant" (f_i = 1), "power" (f_i(x) = x^(i-1)),
// "mod" (f_i(x) = x mod (i+1)), "shifted" (f_i(x) = x + i).
// Throws InvalidArgument for unknown ids.
FunctionFamily builtin_family(const std::string& id);
std::vector<std::string> builtin_family_ids();

// Entry i of the family list: p_i(a_j) = f_i(j) / sum_h f_i(h), j = 1..l.
// Throws ZeroNormalizer when every f_i(j) vanishes.
PmfProgram make_simple_pmf(const FunctionFamily& family, std::size_t index, const Alphabet& alphabet);

// nu_i(a | x) = f_i(xa) / sum_b f_i(xb); ZeroNormalizer raised lazily when a
// queried context has a vanishing normalizer.
MeasureProgram make_simple_measure(const FunctionFamily& family, std::size_t index, const Alphabet& alphabet);

// Infinite c.e. lists over i = 1, 2, ...
HypothesisList<PmfProgram> make_simple_pmf_family(const FunctionFamily& family, const Alphabet& alphabet);
HypothesisList<MeasureProgram> make_simple_measure_family(const FunctionFamily& family, const Alphabet& alphabet);

}  // namespace limitid
