#pragma once

// Group-spec grammar:
//
//   spec := atom | spec "x" spec                      (left associative)
//   atom := "C" INT | "Q8" | "D" INT | "A2(" INT ";" INT ")"
//         | "B(" INT ";" INT ";" INT ";" INT ")"      (B(p;n;d;k))
//         | "pres{" ident ("," ident)* "|" word ("," word)* "}"
//         | builtin name (uppercase letters, digits, underscore)
//   word := (ident ("^" SINT)?)+ with optional "*" separators
//
// "D n" is the dihedral group of order n.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "cohoforge/coset_enum.hpp"
#include "cohoforge/group.hpp"

namespace cohoforge {

struct GroupSpec;
using SpecPtr = std::shared_ptr<const GroupSpec>;

struct CyclicSpec {
  std::size_t n;
  friend bool operator==(const CyclicSpec&, const CyclicSpec&) = default;
};

struct BuiltinSpec {
  std::string name;
  friend bool operator==(const BuiltinSpec&, const BuiltinSpec&) = default;
};

struct ProductSpec {
  SpecPtr left;
  SpecPtr right;
};

/// (Z/p^base_exp)^rank x| Z/p^acting_exp with x y x^-1 = y^twist.
struct SemidirectSpec {
  std::uint32_t p;
  std::size_t rank;
  std::size_t base_exp;
  std::size_t acting_exp;
  std::uint64_t twist;  // reduced modulo p^base_exp
  friend bool operator==(const SemidirectSpec&, const SemidirectSpec&) = default;
};

struct PresentationSpec {
  Presentation presentation;
  friend bool operator==(const PresentationSpec&, const PresentationSpec&) = default;
};

struct GroupSpec {
  std::variant<CyclicSpec, BuiltinSpec, ProductSpec, SemidirectSpec, PresentationSpec> node;
};

bool operator==(const GroupSpec& a, const GroupSpec& b);
bool operator==(const ProductSpec& a, const ProductSpec& b);

/// Throws ParseError (with byte position) on malformed input.
SpecPtr parse_group_spec(std::string_view text);
/// Canonical text; parse_group_spec(print_group_spec(s)) == s for parsed specs.
std::string print_group_spec(const GroupSpec& spec);

/// A2(n;d) = (C_{2^n})^d x| C2 acting by inversion.
SemidirectSpec family_a2(std::size_t n, std::size_t d);
/// B_p(n;d,k) = (C_{p^n})^d x| C_{p^n} acting by y -> y^{p^k + 1}.
SemidirectSpec family_b(std::uint32_t p, std::size_t n, std::size_t d, std::size_t k);

struct RealizeOptions {
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t coset_bound = kDefaultCosetBound;
};

/// Builds the concrete group. Throws RealizeError (order cap, invalid twist,
/// coset bound, unknown builtin name).
GroupPtr realize(const GroupSpec& spec, const RealizeOptions& options = {});
GroupPtr realize(std::string_view text, const RealizeOptions& options = {});

/// Parses "a->w,b->w" generator maps; images are words in the target's
/// generator names. Unlisted source generators map to the same-named target
/// generator. Throws ParseError / RealizeError.
GroupHom parse_generator_map(const GroupPtr& source, const GroupPtr& target,
                             std::string_view text);

}  // namespace cohoforge
