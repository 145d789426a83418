#pragma once

// Finite groups as full multiplication tables.
//
// Elements are dense ids 0..order-1 with 0 the identity. Groups are
// immutable after construction and handed around as shared pointers so that
// homomorphisms, subgroups and resolutions can refer to them cheaply.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cohoforge/errors.hpp"

namespace cohoforge {

using Element = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 1024;

class FiniteGroup {
 public:
  /// Validates the table: identity at 0, two-sided inverses, generators that
  /// generate, and associativity (exhaustive up to order 64, sampled above).
  FiniteGroup(std::string label, std::size_t order, std::vector<Element> table,
              std::vector<Element> generators, std::vector<std::string> generator_names);

  const std::string& label() const { return label_; }
  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element power(Element g, long long k) const;
  const std::vector<Element>& table() const { return table_; }
  const std::vector<Element>& inverses() const { return inv_; }

  const std::vector<Element>& generators() const { return generators_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  std::optional<Element> generator(std::string_view name) const;

  /// FNV-1a hash of the multiplication table; stable across runs.
  std::uint64_t fingerprint() const;

 private:
  std::string label_;
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<Element> generators_;
  std::vector<std::string> generator_names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Closure of `generators` under `mul` in an arbitrary element representation.
/// Element ids follow breadth-first discovery order, so the result is
/// deterministic. Throws RealizeError past `order_cap`.
template <class T, class Hash = std::hash<T>, class Mul>
GroupPtr generate_group(std::string label, const T& identity, const std::vector<T>& generators,
                        std::vector<std::string> names, Mul mul,
                        std::size_t order_cap = kDefaultOrderCap) {
  std::vector<T> elems{identity};
  std::unordered_map<T, Element, Hash> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : generators) {
      T next = mul(elems[i], g);
      if (index.emplace(next, static_cast<Element>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (elems.size() > order_cap)
          throw RealizeError("group " + label + " exceeds the order cap of " +
                             std::to_string(order_cap));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(mul(elems[a], elems[b]));
  std::vector<Element> gens;
  for (const auto& g : generators) gens.push_back(index.at(g));
  return std::make_shared<const FiniteGroup>(std::move(label), n, std::move(table), std::move(gens),
                                             std::move(names));
}

// ------------------------------------------------------------------ subgroups

struct SubgroupHandle {
  GroupPtr parent;
  std::vector<Element> elements;  // sorted, contains 0

  std::size_t order() const { return elements.size(); }
  bool contains(Element g) const;
  friend bool operator==(const SubgroupHandle& a, const SubgroupHandle& b) {
    return a.elements == b.elements;
  }
};

/// Smallest subgroup containing `seeds`.
SubgroupHandle subgroup_closure(const GroupPtr& g, const std::vector<Element>& seeds);
SubgroupHandle trivial_subgroup(const GroupPtr& g);
SubgroupHandle whole_group(const GroupPtr& g);
bool is_normal(const SubgroupHandle& s);
/// The subgroup as a group of its own. Element ids follow the sorted order of
/// `s.elements`; the subgroup's generators are the ones closure found.
GroupPtr as_group(const SubgroupHandle& s, std::string label = {});

// ------------------------------------------------------------------ homomorphisms

class GroupHom {
 public:
  /// Takes the full image table; verifies the multiplicative property.
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> image);

  /// Extends images given for source->generators() to the whole group.
  /// Throws RealizeError when the assignment does not define a homomorphism.
  static GroupHom from_generator_images(GroupPtr source, GroupPtr target,
                                        const std::vector<Element>& generator_images);
  static GroupHom identity(GroupPtr g);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  Element operator()(Element g) const { return image_[g]; }
  const std::vector<Element>& images() const { return image_; }

  bool is_surjective() const;
  bool is_injective() const;
  SubgroupHandle kernel() const;
  /// (*this) then `next`.
  GroupHom then(const GroupHom& next) const;

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> image_;
};

/// Inclusion of a subgroup, realized as a group of its own.
GroupHom inclusion(const SubgroupHandle& s, std::string label = {});

struct Quotient {
  GroupPtr group;
  GroupHom projection;
};
/// G/N for a normal subgroup N. Cosets are numbered by their smallest element.
Quotient quotient(const SubgroupHandle& normal, std::string label = {});

struct DirectProduct {
  GroupPtr group;
  GroupHom inject_left, inject_right;
  GroupHom project_left, project_right;
};
/// Element (a, b) gets id a * |b| + b. Generator names from the right factor
/// that collide with the left get a numeric suffix ("g" -> "g2").
DirectProduct direct_product(const GroupPtr& a, const GroupPtr& b,
                             std::size_t order_cap = kDefaultOrderCap);

// ------------------------------------------------------------------ constructors

GroupPtr cyclic_group(std::size_t n);
/// Dihedral group of order n (n even), generators r (rotation) and s.
GroupPtr dihedral_group(std::size_t n);
/// Dicyclic group of order 4m: <g, h | h^{2m}, g^2 = h^m, g h g^-1 = h^-1>.
/// m = 2 gives Q8 in the convention g^4 = 1, g^2 = h^2, gh = h^3 g.
GroupPtr dicyclic_group(std::size_t m, std::string label = {});
/// (Z/q)^rank x| Z/s with x y x^-1 = y^twist on every coordinate. Generators
/// are named x and y (rank 1) or x, y1..yd.
GroupPtr split_metacyclic(std::size_t rank, std::size_t base_order, std::size_t acting_order,
                          std::uint64_t twist, std::string label = {},
                          std::size_t order_cap = kDefaultOrderCap);
/// Group generated by permutations of {0..degree-1}; composition applies the
/// right factor first.
GroupPtr permutation_group(std::string label, const std::vector<std::vector<std::uint8_t>>& gens,
                           std::vector<std::string> names);

// ------------------------------------------------------------------ structure

std::size_t element_order(const FiniteGroup& g, Element x);
std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);
bool is_p_group(std::size_t order, std::uint32_t p);
/// Largest power of p dividing n.
std::size_t p_part(std::size_t n, std::uint32_t p);
bool is_elementary_abelian(const SubgroupHandle& s, std::uint32_t p);

/// Subgroup generated by all elements of order prime to p.
SubgroupHandle o_p_prime(const GroupPtr& g, std::uint32_t p);
SubgroupHandle sylow(const GroupPtr& g, std::uint32_t p);
/// All normal subgroups, sorted by (order, elements).
std::vector<SubgroupHandle> normal_subgroups(const GroupPtr& g);
/// A normal subgroup N with N meet S = 1 and |N||S| = |G|, if one exists.
std::optional<SubgroupHandle> has_normal_complement(const SubgroupHandle& s);
/// Subgroup generated by commutators and p-th powers.
SubgroupHandle frattini_p_subgroup(const GroupPtr& g, std::uint32_t p);
/// dim_Fp of G^ab (x) F_p, i.e. log_p of [G : G'G^p].
std::size_t abelianization_p_rank(const GroupPtr& g, std::uint32_t p);

enum class DegreeOneStatus { generated, not_generated, prime_does_not_divide_order };

struct DegreeOneVerdict {
  DegreeOneStatus status;
  bool generated_in_degree_one;
  std::optional<SubgroupHandle> witness;  // the normal complement when generated
  std::string reason;
};

/// Whether H*(G, F_p) is generated in degree one: exactly when p = 2 and the
/// Sylow 2-subgroup is nontrivial elementary abelian with a normal complement.
DegreeOneVerdict degree_one_classifier(const GroupPtr& g, std::uint32_t p);

/// Brute-force search for an isomorphism a -> b over images of a's
/// generators, pruned by element orders. Intended for small groups.
std::optional<GroupHom> find_isomorphism(const GroupPtr& a, const GroupPtr& b);

}  // namespace cohoforge
