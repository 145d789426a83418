#pragma once

// Hilbert functions of finitely presented graded rings over F_p.
//
// Relations are polynomials in the generator names with +, -, *, ^ and
// parentheses; juxtaposition also multiplies ("yz" is y*z when both are
// generators, longest name first).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cohoforge {

struct RingGenerator {
  std::string name;
  std::size_t degree;  // >= 1
};

enum class Parity {
  /// Strictly commutative polynomial ring (the p = 2 convention).
  commutative,
  /// Graded commutative: odd-degree generators anticommute and square to 0.
  graded,
};

/// commutative for p = 2, graded otherwise.
Parity default_parity(std::uint32_t p);

/// Monomials are exponent vectors in generator order; in the graded
/// convention odd generators have exponent at most 1.
using Monomial = std::vector<std::uint32_t>;
using Polynomial = std::map<Monomial, std::uint32_t>;

class PresentedRing {
 public:
  /// Throws std::invalid_argument for a bad generator list, a relation that
  /// does not parse, or a non-homogeneous relation.
  PresentedRing(std::uint32_t p, std::vector<RingGenerator> generators, const std::vector<std::string>& relations,
                Parity parity);

  std::uint32_t prime() const { return p_; }
  const std::vector<RingGenerator>& generators() const { return gens_; }
  const std::vector<Polynomial>& relations() const { return relations_; }

  Polynomial parse(const std::string& text) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  /// Degree of a nonzero homogeneous polynomial; throws std::invalid_argument
  /// when the terms have different degrees.
  std::size_t degree(const Polynomial& f) const;

  std::vector<Monomial> monomials(std::size_t degree) const;
  /// dim of the quotient in degrees 0..n.
  std::vector<std::size_t> dims(std::size_t n) const;

 private:
  std::uint32_t p_;
  std::vector<RingGenerator> gens_;
  Parity parity_;
  std::vector<Polynomial> relations_;
};

std::vector<std::size_t> presented_ring_dims(std::uint32_t p, const std::vector<RingGenerator>& generators,
                                             const std::vector<std::string>& relations, Parity parity,
                                             std::size_t n);

}  // namespace cohoforge
