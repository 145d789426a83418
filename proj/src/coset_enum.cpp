#include "cohoforge/coset_enum.hpp"

#include <deque>
#include <numeric>

namespace cohoforge {

namespace {

constexpr int kUndefined = -1;

// Letters: 2i is generator i, 2i+1 its inverse.
int inverse_letter(int x) { return x ^ 1; }

class CosetTable {
 public:
  CosetTable(std::size_t letters, std::size_t bound) : letters_(letters), bound_(bound) {
    new_coset();
  }

  int entry(int c, int x) const { return table_[static_cast<std::size_t>(c) * letters_ + x]; }
  void set(int c, int x, int v) { table_[static_cast<std::size_t>(c) * letters_ + x] = v; }
  bool live(int c) const { return forward_[c] == c; }
  std::size_t defined() const { return forward_.size(); }

  int new_coset() {
    if (forward_.size() >= bound_)
      throw RealizeError("coset enumeration exceeded " + std::to_string(bound_) +
                         " cosets (group possibly infinite or bound too small)");
    const int c = static_cast<int>(forward_.size());
    forward_.push_back(c);
    table_.resize(table_.size() + letters_, kUndefined);
    return c;
  }

  void define(int c, int x) {
    const int d = new_coset();
    set(c, x, d);
    set(d, inverse_letter(x), c);
  }

  void scan_and_fill(int alpha, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = alpha, b = alpha;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, w[i]) != kUndefined) f = entry(f, w[i++]);
      if (i > j) {
        if (f != alpha) coincidence(f, alpha);
        return;
      }
      while (j >= i && entry(b, inverse_letter(w[j])) != kUndefined)
        b = entry(b, inverse_letter(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        set(f, w[i], b);
        set(b, inverse_letter(w[i]), f);
        return;
      }
      define(f, w[i]);
    }
  }

  int rep(int c) {
    int r = c;
    while (forward_[r] != r) r = forward_[r];
    while (forward_[c] != r) {
      const int next = forward_[c];
      forward_[c] = r;
      c = next;
    }
    return r;
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int g = queue.front();
      queue.pop_front();
      for (int x = 0; x < static_cast<int>(letters_); ++x) {
        const int d = entry(g, x);
        if (d == kUndefined) continue;
        if (entry(d, inverse_letter(x)) == g) set(d, inverse_letter(x), kUndefined);
        const int mu = rep(g), nu = rep(d);
        if (entry(mu, x) != kUndefined) {
          merge(nu, entry(mu, x), queue);
        } else if (entry(nu, inverse_letter(x)) != kUndefined) {
          merge(mu, entry(nu, inverse_letter(x)), queue);
        } else {
          set(mu, x, nu);
          set(nu, inverse_letter(x), mu);
        }
      }
    }
  }

 private:
  void merge(int k, int l, std::deque<int>& queue) {
    const int a = rep(k), b = rep(l);
    if (a == b) return;
    const int lo = std::min(a, b), hi = std::max(a, b);
    forward_[hi] = lo;
    queue.push_back(hi);
  }

  std::size_t letters_;
  std::size_t bound_;
  std::vector<int> table_;
  std::vector<int> forward_;
};

std::vector<int> to_letters(const Word& w) {
  std::vector<int> out;
  for (const auto& s : w) {
    const int base = static_cast<int>(2 * s.generator);
    const int letter = s.exponent >= 0 ? base : base + 1;
    for (long k = 0; k < (s.exponent >= 0 ? s.exponent : -s.exponent); ++k) out.push_back(letter);
  }
  return out;
}

}  // namespace

GroupPtr enumerate_presentation(const Presentation& pres, std::size_t coset_bound,
                                std::size_t order_cap, std::string label) {
  if (coset_bound < 1) throw RealizeError("coset bound must be at least 1");
  for (const auto& w : pres.relators)
    for (const auto& s : w)
      if (s.generator >= pres.generators.size()) throw RealizeError("relator uses an unknown generator");

  const std::size_t letters = 2 * pres.generators.size();
  std::vector<std::vector<int>> relators;
  for (const auto& w : pres.relators) relators.push_back(to_letters(w));

  CosetTable t(letters, coset_bound);
  for (int alpha = 0; alpha < static_cast<int>(t.defined()); ++alpha) {
    for (const auto& r : relators) {
      if (!t.live(alpha)) break;
      t.scan_and_fill(alpha, r);
    }
    if (!t.live(alpha)) continue;
    for (int x = 0; x < static_cast<int>(letters); ++x)
      if (t.entry(alpha, x) == kUndefined) t.define(alpha, x);
  }

  // Standardize: breadth-first numbering of live cosets from coset 0.
  std::vector<int> number(t.defined(), kUndefined);
  std::vector<int> order{0};
  number[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int x = 0; x < static_cast<int>(letters); ++x) {
      if (t.entry(order[i], x) == kUndefined) throw RealizeError("incomplete coset table");
      const int d = t.rep(t.entry(order[i], x));
      if (number[d] == kUndefined) {
        number[d] = static_cast<int>(order.size());
        order.push_back(d);
        if (order.size() > order_cap)
          throw RealizeError("presented group exceeds the order cap of " + std::to_string(order_cap));
      }
    }
  }
  const std::size_t n = order.size();

  // act[c][x]: standardized coset table.
  std::vector<Element> act(n * letters);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t x = 0; x < letters; ++x)
      act[c * letters + x] = static_cast<Element>(number[t.rep(t.entry(order[c], static_cast<int>(x)))]);

  // Element c is the coset 1 * w_c; w_c = w_parent * letter.
  std::vector<std::pair<Element, int>> parent(n, {0, -1});
  {
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::vector<Element> bfs{0};
    for (std::size_t i = 0; i < bfs.size(); ++i)
      for (std::size_t x = 0; x < letters; ++x) {
        const Element d = act[bfs[i] * letters + x];
        if (!seen[d]) {
          seen[d] = true;
          parent[d] = {bfs[i], static_cast<int>(x)};
          bfs.push_back(d);
        }
      }
    // BFS over the standardized table visits cosets in their numbering.
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      table[a * n] = static_cast<Element>(a);
      for (std::size_t k = 1; k < n; ++k) {
        const Element b = bfs[k];
        const auto [pb, letter] = parent[b];
        table[a * n + b] = act[table[a * n + pb] * letters + static_cast<std::size_t>(letter)];
      }
    }
    std::vector<Element> gens;
    for (std::size_t i = 0; i < pres.generators.size(); ++i) gens.push_back(act[2 * i]);
    if (label.empty()) label = "presented group";
    return std::make_shared<const FiniteGroup>(std::move(label), n, std::move(table), std::move(gens),
                                               pres.generators);
  }
}

Element evaluate_word(const FiniteGroup& g, const std::vector<Element>& generator_images,
                      const Word& w) {
  Element acc = 0;
  for (const auto& s : w) acc = g.mul(acc, g.power(generator_images.at(s.generator), s.exponent));
  return acc;
}

}  // namespace cohoforge
