#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cohoforge/group.hpp"

namespace cohoforge {

struct Syllable {
  std::size_t generator;
  long exponent;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};
using Word = std::vector<Syllable>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

inline constexpr std::size_t kDefaultCosetBound = 8192;

/// Todd-Coxeter enumeration (HLT strategy) of the cosets of the trivial
/// subgroup. Elements are numbered in breadth-first order of the standardized
/// coset table, so 0 is the identity and the result is deterministic.
///
/// Throws RealizeError when more than `coset_bound` cosets get defined or
/// the group is larger than `order_cap`.
GroupPtr enumerate_presentation(const Presentation& pres, std::size_t coset_bound = kDefaultCosetBound,
                                std::size_t order_cap = kDefaultOrderCap, std::string label = {});

/// Evaluates a word on concrete generator images.
Element evaluate_word(const FiniteGroup& g, const std::vector<Element>& generator_images,
                      const Word& w);

}  // namespace cohoforge
