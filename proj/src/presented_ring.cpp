#include "cohoforge/presented_ring.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "cohoforge/fp_linalg.hpp"

namespace cohoforge {

Parity default_parity(std::uint32_t p) { return p == 2 ? Parity::commutative : Parity::graded; }

namespace {

void add_term(Polynomial& f, const Monomial& m, std::uint32_t c, std::uint32_t p) {
  c %= p;
  if (!c) return;
  auto [it, inserted] = f.emplace(m, c);
  if (!inserted) {
    it->second = (it->second + c) % p;
    if (!it->second) f.erase(it);
  }
}

class RelationParser {
 public:
  RelationParser(const PresentedRing& ring, const std::string& text) : ring_(ring), text_(text) {}

  Polynomial parse() {
    auto f = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("relation '" + text_ + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Polynomial constant(std::uint32_t c) const {
    Polynomial f;
    add_term(f, Monomial(ring_.generators().size(), 0), c, ring_.prime());
    return f;
  }

  Polynomial expr() {
    Polynomial f;
    bool negate = false;
    if (peek('-') || peek('+')) negate = text_[pos_++] == '-';
    for (;;) {
      const auto t = term();
      const std::uint32_t p = ring_.prime();
      for (const auto& [m, c] : t) add_term(f, m, negate ? p - c : c, p);
      if (peek('+') || peek('-')) {
        negate = text_[pos_++] == '-';
        continue;
      }
      return f;
    }
  }

  bool starts_factor() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Polynomial term() {
    auto f = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        f = ring_.multiply(f, factor());
      } else if (starts_factor()) {
        f = ring_.multiply(f, factor());
      } else {
        return f;
      }
    }
  }

  std::uint64_t number() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
      if (v > 1'000'000) fail("number too large");
    }
    return v;
  }

  Polynomial factor() {
    auto base = atom();
    if (peek('^')) {
      ++pos_;
      const auto e = number();
      auto out = constant(1);
      for (std::uint64_t i = 0; i < e; ++i) out = ring_.multiply(out, base);
      return out;
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      auto f = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return constant(static_cast<std::uint32_t>(number() % ring_.prime()));
    std::size_t best = ring_.generators().size(), best_len = 0;
    for (std::size_t i = 0; i < ring_.generators().size(); ++i) {
      const auto& name = ring_.generators()[i].name;
      if (name.size() > best_len && text_.compare(pos_, name.size(), name) == 0) {
        best = i;
        best_len = name.size();
      }
    }
    if (best == ring_.generators().size()) fail("unknown generator");
    pos_ += best_len;
    Polynomial f;
    Monomial m(ring_.generators().size(), 0);
    m[best] = 1;
    add_term(f, m, 1, ring_.prime());
    return f;
  }

  const PresentedRing& ring_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

PresentedRing::PresentedRing(std::uint32_t p, std::vector<RingGenerator> generators,
                             const std::vector<std::string>& relations, Parity parity)
    : p_(p), gens_(std::move(generators)), parity_(parity) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& name = gens_[i].name;
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
      throw std::invalid_argument("bad generator name '" + name + "'");
    if (gens_[i].degree == 0) throw std::invalid_argument("generator " + name + " has degree 0");
    for (std::size_t j = 0; j < i; ++j)
      if (gens_[j].name == name) throw std::invalid_argument("duplicate generator " + name);
  }
  for (const auto& text : relations) {
    auto f = parse(text);
    if (!f.empty()) degree(f);
    relations_.push_back(std::move(f));
  }
}

Polynomial PresentedRing::parse(const std::string& text) const { return RelationParser(*this, text).parse(); }

Polynomial PresentedRing::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial out;
  const std::size_t k = gens_.size();
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(k);
      bool zero = false;
      std::size_t swaps = 0;
      for (std::size_t i = 0; i < k; ++i) {
        m[i] = ma[i] + mb[i];
        if (parity_ == Parity::graded && gens_[i].degree % 2) {
          if (m[i] > 1) zero = true;
          // odd factor of b at i moves left past odd factors of a beyond i
          if (mb[i])
            for (std::size_t j = i + 1; j < k; ++j)
              if (ma[j] && gens_[j].degree % 2) ++swaps;
        }
      }
      if (zero) continue;
      std::uint64_t c = static_cast<std::uint64_t>(ca) * cb % p_;
      if (swaps % 2) c = (p_ - c) % p_;
      add_term(out, m, static_cast<std::uint32_t>(c), p_);
    }
  return out;
}

std::size_t PresentedRing::degree(const Polynomial& f) const {
  if (f.empty()) throw std::invalid_argument("the zero polynomial has no degree");
  std::optional<std::size_t> d;
  for (const auto& [m, c] : f) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < m.size(); ++i) deg += m[i] * gens_[i].degree;
    if (d && *d != deg) throw std::invalid_argument("relation is not homogeneous");
    d = deg;
  }
  return *d;
}

std::vector<Monomial> PresentedRing::monomials(std::size_t degree) const {
  std::vector<Monomial> out;
  Monomial m(gens_.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i == gens_.size()) {
      if (left == 0) out.push_back(m);
      return;
    }
    const std::size_t d = gens_[i].degree;
    std::size_t max_e = left / d;
    if (parity_ == Parity::graded && d % 2) max_e = std::min<std::size_t>(max_e, 1);
    for (std::size_t e = 0; e <= max_e; ++e) {
      m[i] = static_cast<std::uint32_t>(e);
      self(self, i + 1, left - e * d);
    }
    m[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

std::vector<std::size_t> PresentedRing::dims(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto basis = monomials(k);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    std::vector<FpVector> rows;
    for (const auto& r : relations_) {
      if (r.empty()) continue;
      const std::size_t d = degree(r);
      if (d > k) continue;
      for (const auto& m : monomials(k - d)) {
        const auto prod = multiply(Polynomial{{m, 1}}, r);
        FpVector v(p_, basis.size());
        for (const auto& [mono, c] : prod) v.set(index.at(mono), c);
        rows.push_back(std::move(v));
      }
    }
    out.push_back(basis.size() - (rows.empty() ? 0 : Subspace::span(p_, basis.size(), rows).dim()));
  }
  return out;
}

std::vector<std::size_t> presented_ring_dims(std::uint32_t p, const std::vector<RingGenerator>& generators,
                                             const std::vector<std::string>& relations, Parity parity,
                                             std::size_t n) {
  return PresentedRing(p, generators, relations, parity).dims(n);
}

}  // namespace cohoforge
