#include "cohoforge/cohomology.hpp"

#include <stdexcept>

namespace cohoforge {

namespace {

std::uint32_t augment_component(const FpVector& v, std::size_t j, std::size_t order) {
  std::uint32_t s = 0;
  for (std::size_t h = 0; h < order; ++h) s += v[j * order + h];
  return s;
}

// sum_j b_j eps(component j of v)
std::uint32_t evaluate(const FpVector& b, const FpVector& v, std::size_t order, std::uint32_t p) {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j]) s += static_cast<std::uint64_t>(b[j]) * augment_component(v, j, order);
  return static_cast<std::uint32_t>(s % p);
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  return &a == &b || (a.order() == b.order() && a.table() == b.table());
}

}  // namespace

// ------------------------------------------------------------------ lifts

ChainMapLift lift_cocycle(const CohClass& cls, std::size_t k) {
  const auto& res = *cls.resolution;
  const std::size_t order = res.group()->order();
  std::vector<FpVector> images;
  for (std::size_t i = 0; i < cls.cocycle.size(); ++i) {
    FpVector v(res.prime(), order);
    v.set(0, cls.cocycle[i]);
    images.push_back(std::move(v));
  }
  ChainMapLift lift{cls, {}};
  lift.maps.emplace_back(res.group(), res.prime(), cls.cocycle.size(), 1, std::move(images));
  extend_lift(lift, k);
  return lift;
}

void extend_lift(ChainMapLift& lift, std::size_t k) {
  const auto& res = *lift.cls.resolution;
  const std::size_t m = lift.cls.degree;
  if (res.length() < m + k)
    throw std::out_of_range("lifting a degree-" + std::to_string(m) + " class through stage " + std::to_string(k) +
                            " needs resolution length " + std::to_string(m + k));
  for (std::size_t j = lift.maps.size(); j <= k; ++j) {
    const auto& d = res.differential(m + j);
    const auto& prev = lift.maps[j - 1];
    std::vector<FpVector> images;
    for (std::size_t i = 0; i < d.source_rank(); ++i) images.push_back(res.lift_through(j, prev.apply(d.image(i))));
    lift.maps.emplace_back(res.group(), res.prime(), d.source_rank(), res.rank(j), std::move(images));
  }
}

bool verify_lift(const ChainMapLift& lift) {
  const auto& res = *lift.cls.resolution;
  const std::size_t m = lift.cls.degree;
  for (std::size_t i = 0; i < lift.cls.cocycle.size(); ++i)
    if (lift.maps[0].image(i).total() != lift.cls.cocycle[i]) return false;
  for (std::size_t j = 1; j < lift.maps.size(); ++j) {
    const auto& d_src = res.differential(m + j);
    const auto& d_tgt = res.differential(j);
    for (std::size_t i = 0; i < d_src.source_rank(); ++i)
      if (!(d_tgt.apply(lift.maps[j].image(i)) == lift.maps[j - 1].apply(d_src.image(i)))) return false;
  }
  return true;
}

CohClass compose(const ChainMapLift& lift, const CohClass& b) {
  if (b.resolution != lift.cls.resolution) throw std::invalid_argument("classes live on different resolutions");
  if (b.degree >= lift.maps.size())
    throw std::out_of_range("lift does not reach stage " + std::to_string(b.degree));
  const auto& res = lift.cls.resolution;
  const auto& u = lift.maps[b.degree];
  const std::size_t order = res->group()->order();
  FpVector c(res->prime(), u.source_rank());
  for (std::size_t i = 0; i < u.source_rank(); ++i) c.set(i, evaluate(b.cocycle, u.image(i), order, res->prime()));
  return make_class(res, lift.cls.degree + b.degree, c);
}

CohClass cup(const CohClass& a, const CohClass& b) {
  if (a.resolution != b.resolution) throw std::invalid_argument("classes live on different resolutions");
  const std::size_t total = a.degree + b.degree;
  if (a.resolution->length() < total + 1)
    throw std::out_of_range("cup product in degree " + std::to_string(total) + " needs resolution length " +
                            std::to_string(total + 1));
  return compose(lift_cocycle(a, b.degree), b);
}

// ------------------------------------------------------------------ comparison maps

ComparisonMap::ComparisonMap(GroupHom psi, ResolutionPtr source, ResolutionPtr target)
    : psi_(std::move(psi)), source_(std::move(source)), target_(std::move(target)) {
  if (!same_group(*psi_.source(), *source_->group()))
    throw std::invalid_argument("source resolution is not over the homomorphism's source group");
  if (!same_group(*psi_.target(), *target_->group()))
    throw std::invalid_argument("target resolution is not over the homomorphism's target group");
  if (source_->prime() != target_->prime()) throw std::invalid_argument("resolutions over different primes");
}

FpVector ComparisonMap::apply_previous(std::size_t k, const FpVector& v) const {
  const auto& prev = stages_[k - 1];
  const std::size_t n1 = source_->group()->order();
  const std::size_t n2 = target_->group()->order();
  const auto& g2 = *target_->group();
  const std::uint32_t p = source_->prime();
  const std::size_t width = target_->rank(k - 1) * n2;
  std::vector<std::uint32_t> acc(width, 0);
  for (std::size_t j = 0; j < prev.size(); ++j)
    for (std::size_t h = 0; h < n1; ++h) {
      const std::uint32_t c = v[j * n1 + h];
      if (!c) continue;
      const Element g = psi_(static_cast<Element>(h));
      const auto& img = prev[j];
      for (std::size_t jj = 0; jj < width / n2; ++jj)
        for (std::size_t kk = 0; kk < n2; ++kk) {
          const std::uint32_t a = img[jj * n2 + kk];
          if (a) acc[jj * n2 + g2.mul(g, static_cast<Element>(kk))] += c * a;
        }
    }
  FpVector out(p, width);
  for (std::size_t i = 0; i < width; ++i) out.set(i, acc[i] % p);
  return out;
}

const std::vector<FpVector>& ComparisonMap::stage(std::size_t k) {
  if (k > source_->length() || k > target_->length())
    throw std::out_of_range("comparison map stage " + std::to_string(k) + " is past a resolution's length");
  if (stages_.empty()) {
    FpVector e0(target_->prime(), target_->group()->order());
    e0.set(0, 1);
    stages_.push_back({e0});
  }
  while (stages_.size() <= k) {
    const std::size_t j = stages_.size();
    const auto& d = source_->differential(j);
    std::vector<FpVector> images;
    for (std::size_t i = 0; i < d.source_rank(); ++i)
      images.push_back(target_->lift_through(j, apply_previous(j, d.image(i))));
    stages_.push_back(std::move(images));
  }
  return stages_[k];
}

CohClass ComparisonMap::pull_back(const CohClass& cls) {
  if (cls.resolution != target_) throw std::invalid_argument("class does not live on the target resolution");
  const auto& f = stage(cls.degree);
  const std::size_t n2 = target_->group()->order();
  FpVector c(source_->prime(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c.set(i, evaluate(cls.cocycle, f[i], n2, source_->prime()));
  return make_class(source_, cls.degree, c);
}

CohClass inflation(const GroupHom& phi, const ResolutionPtr& source, const ResolutionPtr& target,
                   const CohClass& cls) {
  if (!phi.is_surjective()) throw std::invalid_argument("inflation needs a surjective homomorphism");
  ComparisonMap f(phi, source, target);
  return f.pull_back(cls);
}

CohClass restriction(const GroupHom& inclusion, const ResolutionPtr& source, const ResolutionPtr& target,
                     const CohClass& cls) {
  if (!inclusion.is_injective()) throw std::invalid_argument("restriction needs an injective homomorphism");
  ComparisonMap f(inclusion, source, target);
  return f.pull_back(cls);
}

// ------------------------------------------------------------------ Dec ladder

DecLadder::DecLadder(ResolutionPtr res, std::size_t n) : res_(std::move(res)) {
  if (res_->length() < n + 1)
    throw std::out_of_range("Dec ladder to degree " + std::to_string(n) + " needs resolution length " +
                            std::to_string(n + 1));
  const std::uint32_t p = res_->prime();
  dec_.push_back(Subspace::whole(p, res_->cohomology_dim(0)));
  if (n == 0) return;
  dec_.push_back(Subspace::whole(p, res_->cohomology_dim(1)));
  std::vector<ChainMapLift> lifts;
  for (const auto& x : cocycle_basis(res_, 1)) lifts.push_back(lift_cocycle(x, n - 1));
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<FpVector> products;
    const auto& prev = dec_[k - 1];
    for (std::size_t r = 0; r < prev.dim(); ++r) {
      const auto b = class_from_coordinates(res_, k - 1, prev.basis().row(r));
      for (const auto& lift : lifts) products.push_back(compose(lift, b).coordinates());
    }
    dec_.push_back(Subspace::span(p, res_->cohomology_dim(k), products));
  }
}

const Subspace& DecLadder::dec(std::size_t k) const {
  if (k >= dec_.size())
    throw std::out_of_range("Dec ladder stops at degree " + std::to_string(max_degree()));
  return dec_[k];
}

std::vector<std::size_t> DecLadder::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : dec_) out.push_back(s.dim());
  return out;
}

DecLadder dec_ladder(const ResolutionPtr& res, std::size_t n) { return DecLadder(res, n); }

bool is_fully_decomposable(const CohClass& cls, const DecLadder& ladder) {
  if (cls.resolution != ladder.resolution()) throw std::invalid_argument("class and ladder use different resolutions");
  return ladder.dec(cls.degree).member(cls.coordinates());
}

std::vector<std::size_t> kunneth_dims(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<std::size_t> out(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i <= k; ++i) out[k] += a[i] * b[k - i];
  return out;
}

RingFingerprint ring_fingerprint(const ResolutionPtr& res, std::size_t n) {
  RingFingerprint fp;
  fp.dims = cohomology_dims(*res, n);
  fp.dec_dims = dec_ladder(res, n).dims();
  if (n < 2) return fp;
  std::vector<std::pair<std::string, CohClass>> duals;
  for (const auto& name : res->group()->generator_names()) {
    try {
      duals.emplace_back("dual(" + name + ")", generator_dual(res, name));
    } catch (const std::invalid_argument&) {
      // generator with no dual homomorphism to F_p
    }
  }
  for (std::size_t i = 0; i < duals.size(); ++i) {
    const auto& [a_name, a] = duals[i];
    const auto sq = cup(a, a);
    fp.identities.emplace_back(a_name + "^2 = 0", sq.is_zero());
    for (std::size_t j = 0; j < duals.size(); ++j) {
      if (i == j) continue;
      const auto& [b_name, b] = duals[j];
      const auto ab = cup(b, a);
      if (j < i) fp.identities.emplace_back(b_name + "*" + a_name + " = 0", ab.is_zero());
      fp.identities.emplace_back(a_name + "^2 = " + b_name + "*" + a_name, sq == ab);
    }
  }
  return fp;
}

// ------------------------------------------------------------------ bar oracle

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Tuple entries are element ids in 1..n-1; index digits are id - 1.
std::vector<Element> decode(std::size_t index, std::size_t k, std::size_t base) {
  std::vector<Element> t(k);
  for (std::size_t i = k; i-- > 0;) {
    t[i] = static_cast<Element>(index % base + 1);
    index /= base;
  }
  return t;
}

std::size_t encode(const std::vector<Element>& t, std::size_t base) {
  std::size_t idx = 0;
  for (auto g : t) idx = idx * base + (g - 1);
  return idx;
}

}  // namespace

BarComparison::BarComparison(ResolutionPtr res, std::size_t max_degree)
    : res_(std::move(res)), max_degree_(max_degree) {
  const std::size_t base = res_->group()->order() - 1;
  double cells = 1;
  for (std::size_t i = 0; i < max_degree; ++i) cells *= static_cast<double>(base);
  if (cells > static_cast<double>(kBarCellBudget))
    throw BudgetError("bar complex of degree " + std::to_string(max_degree) + " has " +
                      std::to_string(static_cast<std::size_t>(cells)) + " cells, budget is " +
                      std::to_string(kBarCellBudget));
  if (res_->length() < max_degree + 1)
    throw std::out_of_range("bar comparison to degree " + std::to_string(max_degree) + " needs resolution length " +
                            std::to_string(max_degree + 1));
}

const std::vector<FpVector>& BarComparison::psi(std::size_t k) {
  if (k > max_degree_) throw std::out_of_range("bar degree past the comparison's range");
  const auto& g = *res_->group();
  const std::size_t n = g.order(), base = n - 1;
  const std::uint32_t p = res_->prime();
  if (psi_.empty()) {
    FpVector e0(p, n);
    e0.set(0, 1);
    psi_.push_back({e0});
  }
  while (psi_.size() <= k) {
    const std::size_t j = psi_.size();
    const auto& prev = psi_[j - 1];
    const std::size_t cells = ipow(base, j);
    std::vector<FpVector> out;
    out.reserve(cells);
    for (std::size_t idx = 0; idx < cells; ++idx) {
      const auto t = decode(idx, j, base);
      // d[g1|...|gj] = g1[g2|...] + sum (-1)^i [..|g_i g_{i+1}|..] + (-1)^j [g1|...|g_{j-1}]
      std::vector<Element> rest(t.begin() + 1, t.end());
      FpVector y = act(g, t[0], prev[encode(rest, base)]);
      for (std::size_t i = 0; i + 1 < j; ++i) {
        const Element prod = g.mul(t[i], t[i + 1]);
        if (prod == 0) continue;
        std::vector<Element> merged(t.begin(), t.begin() + static_cast<long>(i));
        merged.push_back(prod);
        merged.insert(merged.end(), t.begin() + static_cast<long>(i) + 2, t.end());
        y.add_scaled(prev[encode(merged, base)], (i + 1) % 2 ? p - 1 : 1);
      }
      std::vector<Element> head(t.begin(), t.end() - 1);
      y.add_scaled(prev[encode(head, base)], j % 2 ? p - 1 : 1);
      out.push_back(res_->lift_through(j, y));
    }
    psi_.push_back(std::move(out));
  }
  return psi_[k];
}

const std::vector<std::vector<std::uint32_t>>& BarComparison::phi(std::size_t k) {
  if (k > max_degree_) throw std::out_of_range("bar degree past the comparison's range");
  const std::size_t n = res_->group()->order(), base = n - 1;
  const std::uint32_t p = res_->prime();
  if (phi_.empty()) phi_.push_back({{1}});
  // Phi_j(e_i) = s(Phi_{j-1}(d e_i)) with the contracting homotopy
  // s(h[t]) = [h|t]; every term of Phi_{j-1} has group part 1.
  while (phi_.size() <= k) {
    const std::size_t j = phi_.size();
    const auto& prev = phi_[j - 1];
    const std::size_t prev_cells = ipow(base, j - 1);
    const auto& d = res_->differential(j);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t i = 0; i < d.source_rank(); ++i) {
      std::vector<std::uint32_t> chain(ipow(base, j), 0);
      const auto& img = d.image(i);
      for (std::size_t jj = 0; jj < d.target_rank(); ++jj)
        for (std::size_t h = 1; h < n; ++h) {
          const std::uint32_t c = img[jj * n + h];
          if (!c) continue;
          for (std::size_t t = 0; t < prev_cells; ++t)
            if (prev[jj][t]) chain[(h - 1) * prev_cells + t] = (chain[(h - 1) * prev_cells + t] + c * prev[jj][t]) % p;
        }
      out.push_back(std::move(chain));
    }
    phi_.push_back(std::move(out));
  }
  return phi_[k];
}

BarCochain BarComparison::to_bar(const CohClass& cls) {
  if (cls.resolution != res_) throw std::invalid_argument("class does not live on this resolution");
  const auto& images = psi(cls.degree);
  const std::size_t n = res_->group()->order();
  BarCochain out{cls.degree, std::vector<std::uint32_t>(images.size(), 0)};
  for (std::size_t t = 0; t < images.size(); ++t) out.values[t] = evaluate(cls.cocycle, images[t], n, res_->prime());
  return out;
}

CohClass BarComparison::from_bar(const BarCochain& c) {
  const auto& chains = phi(c.degree);
  const std::uint32_t p = res_->prime();
  FpVector f(p, chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    std::uint64_t s = 0;
    for (std::size_t t = 0; t < c.values.size(); ++t) s += static_cast<std::uint64_t>(chains[i][t]) * c.values[t];
    f.set(i, static_cast<std::uint32_t>(s % p));
  }
  return make_class(res_, c.degree, f);
}

BarCochain BarComparison::coboundary(const BarCochain& c) const {
  const auto& g = *res_->group();
  const std::size_t base = g.order() - 1;
  const std::uint32_t p = res_->prime();
  const std::size_t k = c.degree + 1;
  BarCochain out{k, std::vector<std::uint32_t>(ipow(base, k), 0)};
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    const auto t = decode(idx, k, base);
    std::uint64_t s = c.values[encode(std::vector<Element>(t.begin() + 1, t.end()), base)];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const Element prod = g.mul(t[i], t[i + 1]);
      if (prod == 0) continue;
      std::vector<Element> merged(t.begin(), t.begin() + static_cast<long>(i));
      merged.push_back(prod);
      merged.insert(merged.end(), t.begin() + static_cast<long>(i) + 2, t.end());
      const auto v = c.values[encode(merged, base)];
      s += (i + 1) % 2 ? (p - v) % p : v;
    }
    const auto v = c.values[encode(std::vector<Element>(t.begin(), t.end() - 1), base)];
    s += k % 2 ? (p - v) % p : v;
    out.values[idx] = static_cast<std::uint32_t>(s % p);
  }
  return out;
}

BarCochain cup_bar(const BarCochain& f, const BarCochain& g, std::size_t order, std::uint32_t p) {
  const std::size_t tail = ipow(order - 1, g.degree);
  BarCochain out{f.degree + g.degree, std::vector<std::uint32_t>(f.values.size() * g.values.size(), 0)};
  for (std::size_t i = 0; i < f.values.size(); ++i)
    for (std::size_t j = 0; j < g.values.size(); ++j) out.values[i * tail + j] = f.values[i] * g.values[j] % p;
  return out;
}

CohClass cup_bar_oracle(BarComparison& bar, const CohClass& a, const CohClass& b) {
  const auto& res = bar.resolution();
  return bar.from_bar(cup_bar(bar.to_bar(a), bar.to_bar(b), res->group()->order(), res->prime()));
}

}  // namespace cohoforge
