#include "cohoforge/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cohoforge {

namespace {

constexpr std::size_t kExhaustiveAssociativityLimit = 64;
constexpr std::size_t kAssociativitySamples = 20000;

std::vector<bool> membership(std::size_t n, const std::vector<Element>& elems) {
  std::vector<bool> in(n, false);
  for (auto e : elems) in[e] = true;
  return in;
}

// Closure of `in` (already a subgroup or just {0}) after adding `seeds`,
// using the existing generator list `gens` plus the seeds.
void close_under(const FiniteGroup& g, std::vector<bool>& in, std::vector<Element>& gens,
                 const std::vector<Element>& seeds) {
  for (auto s : seeds) {
    if (in[s]) continue;
    gens.push_back(s);
    std::vector<Element> frontier;
    for (Element x = 0; x < g.order(); ++x)
      if (in[x]) frontier.push_back(x);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto t : gens) {
        const Element y = g.mul(frontier[i], t);
        if (!in[y]) {
          in[y] = true;
          frontier.push_back(y);
        }
      }
    }
  }
}

SubgroupHandle handle_from(const GroupPtr& g, const std::vector<bool>& in) {
  SubgroupHandle s{g, {}};
  for (Element x = 0; x < g->order(); ++x)
    if (in[x]) s.elements.push_back(x);
  return s;
}

std::string suffixed(const std::string& name, const std::vector<std::string>& taken) {
  for (int k = 2;; ++k) {
    std::string candidate = name + std::to_string(k);
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) return candidate;
  }
}

std::optional<std::vector<Element>> extend_to_hom(const FiniteGroup& src, const FiniteGroup& tgt,
                                                  const std::vector<Element>& gens,
                                                  const std::vector<Element>& images) {
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> image(src.order(), kUnset);
  image[0] = 0;
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = src.mul(x, gens[k]);
      const Element fy = tgt.mul(image[x], images[k]);
      if (image[y] == kUnset) {
        image[y] = fy;
        queue.push_back(y);
      } else if (image[y] != fy) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != src.order()) return std::nullopt;
  for (Element a = 0; a < src.order(); ++a)
    for (Element b = 0; b < src.order(); ++b)
      if (image[src.mul(a, b)] != tgt.mul(image[a], image[b])) return std::nullopt;
  return image;
}

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

// ------------------------------------------------------------------ FiniteGroup

FiniteGroup::FiniteGroup(std::string label, std::size_t order, std::vector<Element> table,
                         std::vector<Element> generators, std::vector<std::string> generator_names)
    : label_(std::move(label)),
      order_(order),
      table_(std::move(table)),
      generators_(std::move(generators)),
      generator_names_(std::move(generator_names)) {
  const std::size_t n = order_;
  if (n == 0) throw RealizeError("group order must be positive");
  if (table_.size() != n * n) throw RealizeError("multiplication table has wrong size");
  if (generator_names_.size() != generators_.size())
    throw RealizeError("one name per generator required");
  for (auto e : table_)
    if (e >= n) throw RealizeError("multiplication table entry out of range");
  for (Element g = 0; g < n; ++g)
    if (mul(0, g) != g || mul(g, 0) != g) throw RealizeError("element 0 is not the identity");

  inv_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    Element b = 0;
    while (b < n && mul(a, b) != 0) ++b;
    if (b == n || mul(b, a) != 0) throw RealizeError("element without a two-sided inverse");
    inv_[a] = b;
  }

  if (n <= kExhaustiveAssociativityLimit) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw RealizeError("multiplication is not associative");
  } else {
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ n;
    auto next = [&] {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<Element>((state >> 33) % n);
    };
    for (std::size_t i = 0; i < kAssociativitySamples; ++i) {
      const Element a = next(), b = next(), c = next();
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw RealizeError("multiplication is not associative");
    }
  }

  for (auto g : generators_)
    if (g >= n) throw RealizeError("generator id out of range");
  std::vector<bool> in(n, false);
  in[0] = true;
  // Closure by right multiplication suffices in a finite group.
  std::vector<Element> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (auto t : generators_) {
      const Element y = mul(frontier[i], t);
      if (!in[y]) {
        in[y] = true;
        frontier.push_back(y);
      }
    }
  if (frontier.size() != n) throw RealizeError("generators do not generate the group");
}

Element FiniteGroup::power(Element g, long long k) const {
  if (k < 0) {
    g = inv(g);
    k = -k;
  }
  Element result = 0;
  Element base = g;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::optional<Element> FiniteGroup::generator(std::string_view name) const {
  for (std::size_t i = 0; i < generator_names_.size(); ++i)
    if (generator_names_[i] == name) return generators_[i];
  return std::nullopt;
}

std::uint64_t FiniteGroup::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(order_);
  for (auto e : table_) mix(e);
  return h;
}

// ------------------------------------------------------------------ subgroups

bool SubgroupHandle::contains(Element g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

SubgroupHandle subgroup_closure(const GroupPtr& g, const std::vector<Element>& seeds) {
  std::vector<bool> in(g->order(), false);
  in[0] = true;
  std::vector<Element> gens;
  close_under(*g, in, gens, seeds);
  return handle_from(g, in);
}

SubgroupHandle trivial_subgroup(const GroupPtr& g) { return SubgroupHandle{g, {0}}; }

SubgroupHandle whole_group(const GroupPtr& g) {
  SubgroupHandle s{g, std::vector<Element>(g->order())};
  std::iota(s.elements.begin(), s.elements.end(), Element{0});
  return s;
}

bool is_normal(const SubgroupHandle& s) {
  const auto& g = *s.parent;
  const auto in = membership(g.order(), s.elements);
  for (auto t : g.generators())
    for (auto x : s.elements)
      if (!in[g.mul(g.mul(t, x), g.inv(t))]) return false;
  return true;
}

GroupPtr as_group(const SubgroupHandle& s, std::string label) {
  const auto& g = *s.parent;
  const std::size_t n = s.elements.size();
  std::vector<Element> local(g.order(), static_cast<Element>(-1));
  for (std::size_t i = 0; i < n; ++i) local[s.elements[i]] = static_cast<Element>(i);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Element prod = local[g.mul(s.elements[a], s.elements[b])];
      if (prod == static_cast<Element>(-1)) throw RealizeError("subgroup is not closed");
      table[a * n + b] = prod;
    }
  // Greedy generating set in increasing element order.
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  std::vector<Element> parent_gens;
  for (auto x : s.elements)
    if (!in[x]) close_under(g, in, parent_gens, {x});
  std::vector<Element> gens;
  std::vector<std::string> names;
  for (auto x : parent_gens) {
    gens.push_back(local[x]);
    names.push_back("s" + std::to_string(names.size() + 1));
  }
  if (label.empty()) label = "subgroup of " + g.label();
  return std::make_shared<const FiniteGroup>(std::move(label), n, std::move(table), std::move(gens),
                                             std::move(names));
}

// ------------------------------------------------------------------ homomorphisms

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  const auto& s = *source_;
  const auto& t = *target_;
  if (image_.size() != s.order()) throw RealizeError("homomorphism image table has wrong size");
  for (auto e : image_)
    if (e >= t.order()) throw RealizeError("homomorphism image out of range");
  if (image_[0] != 0) throw RealizeError("homomorphism does not fix the identity");
  for (Element a = 0; a < s.order(); ++a)
    for (Element b = 0; b < s.order(); ++b)
      if (image_[s.mul(a, b)] != t.mul(image_[a], image_[b]))
        throw RealizeError("map is not multiplicative");
}

GroupHom GroupHom::from_generator_images(GroupPtr source, GroupPtr target,
                                         const std::vector<Element>& generator_images) {
  if (generator_images.size() != source->generators().size())
    throw RealizeError("one image per source generator required");
  for (auto e : generator_images)
    if (e >= target->order()) throw RealizeError("generator image out of range");
  auto image = extend_to_hom(*source, *target, source->generators(), generator_images);
  if (!image)
    throw RealizeError("generator images do not satisfy the relations of " + source->label());
  return GroupHom(std::move(source), std::move(target), std::move(*image));
}

GroupHom GroupHom::identity(GroupPtr g) {
  std::vector<Element> image(g->order());
  std::iota(image.begin(), image.end(), Element{0});
  return GroupHom(g, g, std::move(image));
}

bool GroupHom::is_surjective() const {
  std::vector<bool> hit(target_->order(), false);
  for (auto e : image_) hit[e] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool GroupHom::is_injective() const { return kernel().order() == 1; }

SubgroupHandle GroupHom::kernel() const {
  SubgroupHandle k{source_, {}};
  for (Element x = 0; x < source_->order(); ++x)
    if (image_[x] == 0) k.elements.push_back(x);
  return k;
}

GroupHom GroupHom::then(const GroupHom& next) const {
  if (next.source_.get() != target_.get() && next.source_->table() != target_->table())
    throw RealizeError("homomorphisms do not compose");
  std::vector<Element> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[i] = next(image_[i]);
  return GroupHom(source_, next.target_, std::move(image));
}

GroupHom inclusion(const SubgroupHandle& s, std::string label) {
  auto sub = as_group(s, std::move(label));
  return GroupHom(sub, s.parent, s.elements);
}

Quotient quotient(const SubgroupHandle& normal, std::string label) {
  const auto& g = *normal.parent;
  if (!is_normal(normal)) throw RealizeError("quotient by a non-normal subgroup");
  const std::size_t n = g.order();
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> coset(n, kUnset);
  std::vector<Element> reps;
  for (Element x = 0; x < n; ++x) {
    if (coset[x] != kUnset) continue;
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (auto k : normal.elements) coset[g.mul(x, k)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Element> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = coset[g.mul(reps[a], reps[b])];
  std::vector<Element> gens;
  for (auto t : g.generators()) gens.push_back(coset[t]);
  if (label.empty()) label = g.label() + "/N";
  auto q = std::make_shared<const FiniteGroup>(std::move(label), m, std::move(table), std::move(gens),
                                               g.generator_names());
  return Quotient{q, GroupHom(normal.parent, q, coset)};
}

DirectProduct direct_product(const GroupPtr& a, const GroupPtr& b, std::size_t order_cap) {
  const std::size_t na = a->order(), nb = b->order();
  if (na * nb > order_cap)
    throw RealizeError("direct product of order " + std::to_string(na * nb) +
                       " exceeds the order cap of " + std::to_string(order_cap));
  const std::size_t n = na * nb;
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Element l = a->mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      const Element r = b->mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      table[x * n + y] = static_cast<Element>(l * nb + r);
    }
  std::vector<Element> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a->generators().size(); ++i) {
    gens.push_back(static_cast<Element>(a->generators()[i] * nb));
    names.push_back(a->generator_names()[i]);
  }
  for (std::size_t i = 0; i < b->generators().size(); ++i) {
    gens.push_back(b->generators()[i]);
    const auto& name = b->generator_names()[i];
    names.push_back(std::find(names.begin(), names.end(), name) == names.end()
                        ? name
                        : suffixed(name, names));
  }
  auto g = std::make_shared<const FiniteGroup>(a->label() + "x" + b->label(), n, std::move(table),
                                               std::move(gens), std::move(names));
  std::vector<Element> il(na), ir(nb), pl(n), pr(n);
  for (std::size_t x = 0; x < na; ++x) il[x] = static_cast<Element>(x * nb);
  for (std::size_t y = 0; y < nb; ++y) ir[y] = static_cast<Element>(y);
  for (std::size_t z = 0; z < n; ++z) {
    pl[z] = static_cast<Element>(z / nb);
    pr[z] = static_cast<Element>(z % nb);
  }
  return DirectProduct{g, GroupHom(a, g, il), GroupHom(b, g, ir), GroupHom(g, a, pl),
                       GroupHom(g, b, pr)};
}

// ------------------------------------------------------------------ constructors

GroupPtr cyclic_group(std::size_t n) {
  if (n == 0) throw RealizeError("cyclic group of order 0");
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<Element>((i + j) % n);
  std::vector<Element> gens;
  std::vector<std::string> names;
  if (n > 1) {
    gens.push_back(1);
    names.push_back("g");
  }
  return std::make_shared<const FiniteGroup>("C" + std::to_string(n), n, std::move(table),
                                             std::move(gens), std::move(names));
}

GroupPtr dihedral_group(std::size_t n) {
  if (n < 2 || n % 2) throw RealizeError("dihedral group needs an even order, got " + std::to_string(n));
  const std::size_t m = n / 2;
  auto id = [m](std::size_t k, std::size_t e) { return static_cast<Element>(k + m * e); };
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t k1 = x % m, e1 = x / m, k2 = y % m, e2 = y / m;
      const std::size_t k = e1 ? (k1 + m - k2) % m : (k1 + k2) % m;
      table[x * n + y] = id(k, e1 ^ e2);
    }
  return std::make_shared<const FiniteGroup>("D" + std::to_string(n), n, std::move(table),
                                             std::vector<Element>{id(1 % m, 0), id(0, 1)},
                                             std::vector<std::string>{"r", "s"});
}

GroupPtr dicyclic_group(std::size_t m, std::string label) {
  if (m == 0) throw RealizeError("dicyclic group needs m >= 1");
  const std::size_t q = 2 * m, n = 4 * m;
  auto id = [q](std::size_t k, std::size_t e) { return static_cast<Element>(k + q * e); };
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t k1 = x % q, e1 = x / q, k2 = y % q, e2 = y / q;
      Element z;
      if (!e1)
        z = id((k1 + k2) % q, e2);
      else if (!e2)
        z = id((k1 + q - k2) % q, 1);
      else
        z = id((k1 + q - k2 + m) % q, 0);
      table[x * n + y] = z;
    }
  if (label.empty()) label = m == 2 ? "Q8" : "Dic" + std::to_string(n);
  return std::make_shared<const FiniteGroup>(std::move(label), n, std::move(table),
                                             std::vector<Element>{id(0, 1), id(1 % q, 0)},
                                             std::vector<std::string>{"g", "h"});
}

GroupPtr split_metacyclic(std::size_t rank, std::size_t base_order, std::size_t acting_order,
                          std::uint64_t twist, std::string label, std::size_t order_cap) {
  if (base_order == 0 || acting_order == 0) throw RealizeError("factor orders must be positive");
  std::size_t base_size = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    base_size *= base_order;
    if (base_size * acting_order > order_cap)
      throw RealizeError("semidirect product exceeds the order cap of " + std::to_string(order_cap));
  }
  const std::size_t n = base_size * acting_order;
  twist %= base_order;
  if (base_order > 1 && gcd_u(twist, base_order) != 1)
    throw RealizeError("twist " + std::to_string(twist) + " is not a unit modulo " +
                       std::to_string(base_order));
  // twist_pow[b] = twist^b mod q
  std::vector<std::uint64_t> twist_pow(acting_order + 1, 1 % base_order);
  for (std::size_t b = 1; b <= acting_order; ++b)
    twist_pow[b] = twist_pow[b - 1] * twist % base_order;
  if (twist_pow[acting_order] != 1 % base_order)
    throw RealizeError("twist " + std::to_string(twist) + " does not have order dividing " +
                       std::to_string(acting_order) + " modulo " + std::to_string(base_order));

  auto digits = [&](std::size_t a) {
    std::vector<std::size_t> d(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      d[i] = a % base_order;
      a /= base_order;
    }
    return d;
  };
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t b1 = x / base_size;
    const auto a1 = digits(x % base_size);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t b2 = y / base_size;
      const auto a2 = digits(y % base_size);
      std::size_t enc = 0;
      for (std::size_t i = rank; i-- > 0;)
        enc = enc * base_order + (a1[i] + twist_pow[b1] * a2[i]) % base_order;
      table[x * n + y] = static_cast<Element>(((b1 + b2) % acting_order) * base_size + enc);
    }
  }
  std::vector<Element> gens{static_cast<Element>(acting_order > 1 ? base_size : 0)};
  std::vector<std::string> names{"x"};
  std::size_t unit = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    gens.push_back(static_cast<Element>(base_order > 1 ? unit : 0));
    names.push_back(rank == 1 ? "y" : "y" + std::to_string(i + 1));
    unit *= base_order;
  }
  if (label.empty())
    label = "(C" + std::to_string(base_order) + ")^" + std::to_string(rank) + ":C" +
            std::to_string(acting_order) + "[" + std::to_string(twist) + "]";
  return std::make_shared<const FiniteGroup>(std::move(label), n, std::move(table), std::move(gens),
                                             std::move(names));
}

namespace {
struct PermHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};
}  // namespace

GroupPtr permutation_group(std::string label, const std::vector<std::vector<std::uint8_t>>& gens,
                           std::vector<std::string> names) {
  if (gens.empty()) throw RealizeError("permutation group needs generators");
  const std::size_t degree = gens.front().size();
  std::vector<std::uint8_t> id(degree);
  std::iota(id.begin(), id.end(), std::uint8_t{0});
  auto compose = [](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::vector<std::uint8_t> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  return generate_group<std::vector<std::uint8_t>, PermHash>(std::move(label), id, gens,
                                                             std::move(names), compose);
}

// ------------------------------------------------------------------ structure

std::size_t element_order(const FiniteGroup& g, Element x) {
  std::size_t k = 1;
  for (Element y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Element> cls;
    for (Element t = 0; t < g.order(); ++t) {
      const Element y = g.mul(g.mul(t, x), g.inv(t));
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool is_abelian(const FiniteGroup& g) {
  for (auto a : g.generators())
    for (auto b : g.generators())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool is_p_group(std::size_t order, std::uint32_t p) {
  while (order % p == 0) order /= p;
  return order == 1;
}

std::size_t p_part(std::size_t n, std::uint32_t p) {
  std::size_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

bool is_elementary_abelian(const SubgroupHandle& s, std::uint32_t p) {
  const auto& g = *s.parent;
  for (auto x : s.elements) {
    if (g.power(x, p) != 0) return false;
    for (auto y : s.elements)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  }
  return true;
}

SubgroupHandle o_p_prime(const GroupPtr& g, std::uint32_t p) {
  std::vector<Element> seeds;
  for (Element x = 1; x < g->order(); ++x)
    if (element_order(*g, x) % p != 0) seeds.push_back(x);
  return subgroup_closure(g, seeds);
}

SubgroupHandle sylow(const GroupPtr& g, std::uint32_t p) {
  const std::size_t target = p_part(g->order(), p);
  std::vector<bool> in(g->order(), false);
  in[0] = true;
  std::vector<Element> gens;
  std::size_t size = 1;
  std::vector<Element> p_elements;
  for (Element x = 1; x < g->order(); ++x)
    if (is_p_group(element_order(*g, x), p)) p_elements.push_back(x);
  // A p-subgroup that is not Sylow has normalizer quotient divisible by p, so
  // some p-element always extends it; the greedy scan cannot stall.
  while (size < target) {
    bool extended = false;
    for (auto x : p_elements) {
      if (in[x]) continue;
      auto trial_in = in;
      auto trial_gens = gens;
      close_under(*g, trial_in, trial_gens, {x});
      const auto trial_size = static_cast<std::size_t>(std::count(trial_in.begin(), trial_in.end(), true));
      if (is_p_group(trial_size, p)) {
        in = std::move(trial_in);
        gens = std::move(trial_gens);
        size = trial_size;
        extended = true;
        break;
      }
    }
    if (!extended) throw std::logic_error("Sylow search stalled");
  }
  return handle_from(g, in);
}

std::vector<SubgroupHandle> normal_subgroups(const GroupPtr& g) {
  const auto classes = conjugacy_classes(*g);
  std::set<std::vector<Element>> found{{0}};
  std::deque<std::vector<Element>> queue{{0}};
  while (!queue.empty()) {
    const auto current = queue.front();
    queue.pop_front();
    const auto in = membership(g->order(), current);
    for (const auto& cls : classes) {
      if (in[cls.front()]) continue;
      std::vector<Element> seeds = current;
      seeds.insert(seeds.end(), cls.begin(), cls.end());
      auto next = subgroup_closure(g, seeds);
      if (found.insert(next.elements).second) queue.push_back(std::move(next.elements));
    }
  }
  std::vector<SubgroupHandle> out;
  for (const auto& e : found) out.push_back(SubgroupHandle{g, e});
  std::stable_sort(out.begin(), out.end(), [](const SubgroupHandle& a, const SubgroupHandle& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

std::optional<SubgroupHandle> has_normal_complement(const SubgroupHandle& s) {
  const auto& g = s.parent;
  if (g->order() % s.order() != 0) return std::nullopt;
  const std::size_t want = g->order() / s.order();
  if (want == 1) return trivial_subgroup(g);
  if (s.order() == 1) return whole_group(g);
  for (auto& n : normal_subgroups(g)) {
    if (n.order() != want) continue;
    bool meets_trivially = true;
    for (auto x : n.elements)
      if (x != 0 && s.contains(x)) {
        meets_trivially = false;
        break;
      }
    if (meets_trivially) return n;
  }
  return std::nullopt;
}

SubgroupHandle frattini_p_subgroup(const GroupPtr& g, std::uint32_t p) {
  const auto& G = *g;
  std::vector<bool> in(G.order(), false);
  in[0] = true;
  std::vector<Element> gens;
  for (Element a = 0; a < G.order(); ++a) {
    const Element pw = G.power(a, p);
    if (!in[pw]) close_under(G, in, gens, {pw});
    for (Element b = 0; b < G.order(); ++b) {
      const Element c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
      if (!in[c]) close_under(G, in, gens, {c});
    }
  }
  return handle_from(g, in);
}

std::size_t abelianization_p_rank(const GroupPtr& g, std::uint32_t p) {
  std::size_t index = g->order() / frattini_p_subgroup(g, p).order();
  std::size_t rank = 0;
  while (index > 1) {
    index /= p;
    ++rank;
  }
  return rank;
}

DegreeOneVerdict degree_one_classifier(const GroupPtr& g, std::uint32_t p) {
  if (g->order() % p != 0)
    return {DegreeOneStatus::prime_does_not_divide_order, false, std::nullopt,
            "p does not divide |G|; cohomology is concentrated in degree 0"};
  auto s = sylow(g, p);
  if (p != 2)
    return {DegreeOneStatus::not_generated, false, std::nullopt, "p is odd"};
  if (!is_elementary_abelian(s, 2))
    return {DegreeOneStatus::not_generated, false, std::nullopt,
            "Sylow 2-subgroup is not elementary abelian"};
  auto complement = has_normal_complement(s);
  if (!complement)
    return {DegreeOneStatus::not_generated, false, std::nullopt,
            "Sylow 2-subgroup has no normal complement"};
  return {DegreeOneStatus::generated, true, std::move(complement),
          "Sylow 2-subgroup is elementary abelian with a normal complement"};
}

std::optional<GroupHom> find_isomorphism(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return std::nullopt;
  const std::size_t n = a->order();
  std::vector<std::size_t> ord_a(n), ord_b(n);
  std::map<std::size_t, std::size_t> stats_a, stats_b;
  for (Element x = 0; x < n; ++x) {
    ord_a[x] = element_order(*a, x);
    ord_b[x] = element_order(*b, x);
    ++stats_a[ord_a[x]];
    ++stats_b[ord_b[x]];
  }
  if (stats_a != stats_b || is_abelian(*a) != is_abelian(*b)) return std::nullopt;

  // Irredundant generating set for a.
  std::vector<bool> in(n, false);
  in[0] = true;
  std::vector<Element> gens;
  for (auto t : a->generators())
    if (!in[t]) close_under(*a, in, gens, {t});

  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element y = 0; y < n; ++y)
      if (ord_b[y] == ord_a[gens[i]]) candidates[i].push_back(y);

  std::vector<Element> images(gens.size());
  std::optional<std::vector<Element>> found;
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (found) return;
    if (k == gens.size()) {
      auto image = extend_to_hom(*a, *b, gens, images);
      if (!image) return;
      std::vector<bool> hit(n, false);
      for (auto e : *image) hit[e] = true;
      if (std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) found = std::move(image);
      return;
    }
    for (auto y : candidates[k]) {
      images[k] = y;
      search(k + 1);
      if (found) return;
    }
  };
  search(0);
  if (!found) return std::nullopt;
  return GroupHom(a, b, std::move(*found));
}

}  // namespace cohoforge
