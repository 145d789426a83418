#include "cohoforge/resolution.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cohoforge {

std::string to_string(Strategy s) { return s == Strategy::minimal ? "minimal" : "greedy"; }

Strategy parse_strategy(const std::string& s) {
  if (s == "minimal") return Strategy::minimal;
  if (s == "greedy") return Strategy::greedy;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected minimal or greedy)");
}

FpVector act(const FiniteGroup& g, Element x, const FpVector& v) {
  const std::size_t n = g.order();
  if (v.size() % n) throw DimensionMismatch("vector length is not a multiple of the group order");
  FpVector out(v.prime(), v.size());
  const auto* row = g.table().data() + static_cast<std::size_t>(x) * n;
  for (std::size_t base = 0; base < v.size(); base += n)
    for (std::size_t h = 0; h < n; ++h)
      if (v[base + h]) out.set(base + row[h], v[base + h]);
  return out;
}

// ------------------------------------------------------------------ FreeModuleMap

FreeModuleMap::FreeModuleMap(GroupPtr group, std::uint32_t p, std::size_t source_rank,
                             std::size_t target_rank, std::vector<FpVector> images)
    : group_(std::move(group)), p_(p), source_rank_(source_rank), target_rank_(target_rank),
      images_(std::move(images)) {
  if (images_.size() != source_rank_) throw DimensionMismatch("one image per source generator expected");
  for (const auto& v : images_)
    if (v.size() != target_rank_ * group_->order() || v.prime() != p_)
      throw DimensionMismatch("generator image has the wrong length");
}

FpVector FreeModuleMap::apply(const FpVector& v) const {
  const std::size_t n = group_->order();
  if (v.size() != source_rank_ * n) throw DimensionMismatch("vector does not live in the source module");
  std::vector<std::uint32_t> acc(target_rank_ * n, 0);
  const auto& table = group_->table();
  for (std::size_t i = 0; i < source_rank_; ++i) {
    const auto& img = images_[i];
    for (std::size_t h = 0; h < n; ++h) {
      const std::uint32_t c = v[i * n + h];
      if (!c) continue;
      const auto* row = table.data() + h * n;
      for (std::size_t j = 0; j < target_rank_; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const std::uint32_t a = img[j * n + k];
          if (a) acc[j * n + row[k]] += c * a;
        }
    }
  }
  FpVector out(p_, acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out.set(i, acc[i] % p_);
  return out;
}

FpMatrix FreeModuleMap::expanded() const {
  const std::size_t n = group_->order();
  FpMatrix m(p_, source_rank_ * n, target_rank_ * n);
  const auto& table = group_->table();
  for (std::size_t i = 0; i < source_rank_; ++i) {
    const auto& img = images_[i];
    for (std::size_t j = 0; j < target_rank_; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t a = img[j * n + k];
        if (!a) continue;
        for (std::size_t h = 0; h < n; ++h) m.set(i * n + h, j * n + table[h * n + k], a);
      }
  }
  return m;
}

FpMatrix FreeModuleMap::augmented() const {
  const std::size_t n = group_->order();
  FpMatrix m(p_, source_rank_, target_rank_);
  for (std::size_t i = 0; i < source_rank_; ++i)
    for (std::size_t j = 0; j < target_rank_; ++j) {
      std::uint32_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += images_[i][j * n + k];
      m.set(i, j, s % p_);
    }
  return m;
}

// ------------------------------------------------------------------ Resolution

Resolution::Resolution(GroupPtr group, std::uint32_t p, Strategy strategy,
                       std::vector<FreeModuleMap> differentials)
    : group_(std::move(group)), p_(p), strategy_(strategy), differentials_(std::move(differentials)) {
  std::size_t target = 1;
  for (std::size_t k = 0; k < differentials_.size(); ++k) {
    const auto& d = differentials_[k];
    if (d.prime() != p_ || d.group()->order() != group_->order())
      throw DimensionMismatch("differential over the wrong group or field");
    if (d.target_rank() != target) throw DimensionMismatch("differential shapes do not chain");
    target = d.source_rank();
  }
  solvers_.resize(differentials_.size() + 1);
  cohomology_.resize(differentials_.size());
}

std::size_t Resolution::rank(std::size_t n) const {
  if (n == 0) return 1;
  return differential(n).source_rank();
}

std::vector<std::size_t> Resolution::ranks() const {
  std::vector<std::size_t> r;
  for (std::size_t n = 0; n <= length(); ++n) r.push_back(rank(n));
  return r;
}

const FreeModuleMap& Resolution::differential(std::size_t n) const {
  if (n < 1 || n > length())
    throw std::out_of_range("differential d_" + std::to_string(n) + " not in a resolution of length " +
                            std::to_string(length()));
  return differentials_[n - 1];
}

namespace {

FpMatrix augmentation_matrix(std::uint32_t p, std::size_t order) {
  FpMatrix m(p, order, 1);
  for (std::size_t h = 0; h < order; ++h) m.set(h, 0, 1);
  return m;
}

}  // namespace

std::shared_ptr<const RowSolver> Resolution::solver(std::size_t n) const {
  if (n > length()) throw std::out_of_range("no differential in degree " + std::to_string(n));
  std::lock_guard lock(mutex_);
  if (!solvers_[n]) {
    solvers_[n] = std::make_shared<const RowSolver>(n == 0 ? augmentation_matrix(p_, group_->order())
                                                           : differential(n).expanded());
  }
  return solvers_[n];
}

void Resolution::install_solver(std::size_t n, std::shared_ptr<const RowSolver> s) const {
  std::lock_guard lock(mutex_);
  solvers_.at(n) = std::move(s);
}

FpVector Resolution::lift_through(std::size_t n, const FpVector& y) const {
  auto x = solver(n)->solve(y);
  if (!x) throw std::logic_error("lift failed: vector is not a boundary in degree " + std::to_string(n));
  return *x;
}

const CohomologyDegree& Resolution::cohomology(std::size_t n) const {
  if (n + 1 > length())
    throw std::out_of_range("H^" + std::to_string(n) + " needs a resolution of length " +
                            std::to_string(n + 1) + ", have " + std::to_string(length()));
  std::lock_guard lock(mutex_);
  if (!cohomology_[n]) {
    auto c = std::make_unique<CohomologyDegree>();
    c->cocycles = kernel_basis(differential(n + 1).augmented());
    c->coboundaries = n == 0 ? Subspace(p_, 1) : image_basis(differential(n).augmented());
    std::vector<FpVector> reduced;
    for (std::size_t i = 0; i < c->cocycles.dim(); ++i)
      reduced.push_back(c->coboundaries.reduce(c->cocycles.basis().row(i)));
    c->quotient = Subspace::span(p_, rank(n), reduced);
    cohomology_[n] = std::move(c);
  }
  return *cohomology_[n];
}

FpVector Resolution::canonical(std::size_t n, const FpVector& cocycle) const {
  return cohomology(n).coboundaries.reduce(cocycle);
}

FpVector Resolution::coordinates(std::size_t n, const FpVector& cocycle) const {
  const auto& c = cohomology(n);
  if (!(differential(n + 1).augmented() * cocycle).is_zero())
    throw std::invalid_argument("cochain of degree " + std::to_string(n) + " is not a cocycle");
  auto coords = c.quotient.coordinates(c.coboundaries.reduce(cocycle));
  if (!coords) throw std::logic_error("canonical cocycle outside the quotient basis");
  return *coords;
}

// ------------------------------------------------------------------ build

namespace {

std::vector<FpVector> greedy_generators(const FiniteGroup& g, const Subspace& kernel) {
  const std::size_t dim = kernel.dim();
  SpanBuilder span(kernel.prime(), kernel.ambient());
  std::vector<FpVector> chosen;
  for (std::size_t i = 0; i < dim && span.rank() < dim; ++i) {
    FpVector k = kernel.basis().row(i);
    if (span.contains(k)) continue;
    chosen.push_back(k);
    for (Element x = 0; x < g.order() && span.rank() < dim; ++x) span.add(act(g, x, k));
  }
  return chosen;
}

// For a p-group, module generators k_i of K span K/IK, so the k_i that stay
// independent modulo IK = span{(h - 1)k_i} form a minimal generating set.
std::vector<FpVector> minimal_generators(const FiniteGroup& g, const Subspace& kernel) {
  const auto module_gens = greedy_generators(g, kernel);
  SpanBuilder span(kernel.prime(), kernel.ambient());
  for (const auto& k : module_gens)
    for (Element h = 1; h < g.order(); ++h) {
      FpVector v = act(g, h, k);
      v -= k;
      span.add(v);
    }
  std::vector<FpVector> chosen;
  for (const auto& k : module_gens)
    if (span.add(k)) chosen.push_back(k);
  return chosen;
}

}  // namespace

ResolutionPtr build_resolution(const GroupPtr& g, std::uint32_t p, std::size_t n, Strategy strategy,
                               const BuildOptions& options) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (strategy == Strategy::minimal && !is_p_group(g->order(), p))
    throw std::invalid_argument("minimal strategy needs a " + std::to_string(p) + "-group; " + g->label() +
                                " has order " + std::to_string(g->order()));
  const std::size_t order = g->order();
  std::vector<FreeModuleMap> diffs;
  std::vector<std::shared_ptr<const RowSolver>> solvers;
  solvers.push_back(std::make_shared<const RowSolver>(augmentation_matrix(p, order)));
  std::size_t prev_rank = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const Subspace& kernel = solvers.back()->left_kernel();
    auto gens = strategy == Strategy::minimal ? minimal_generators(*g, kernel) : greedy_generators(*g, kernel);
    if (gens.size() * order > options.expanded_budget)
      throw BudgetError("P_" + std::to_string(k) + " of " + g->label() + " needs " +
                        std::to_string(gens.size() * order) + " expanded rows, budget is " +
                        std::to_string(options.expanded_budget));
    diffs.emplace_back(g, p, gens.size(), prev_rank, std::move(gens));
    solvers.push_back(std::make_shared<const RowSolver>(diffs.back().expanded()));
    prev_rank = diffs.back().source_rank();
  }
  auto res = std::make_shared<const Resolution>(g, p, strategy, std::move(diffs));
  for (std::size_t k = 0; k < solvers.size(); ++k) res->install_solver(k, solvers[k]);
  return res;
}

ExactnessReport verify_exactness(const Resolution& res) {
  ExactnessReport report;
  const std::size_t order = res.group()->order();
  auto fail = [&](std::string msg) {
    report.pass = false;
    report.failures.push_back(std::move(msg));
  };
  try {
    std::vector<std::size_t> image_rank(res.length() + 2, 0);
    for (std::size_t k = 1; k <= res.length(); ++k) image_rank[k] = rank(res.differential(k).expanded());
    for (std::size_t k = 0; k <= res.length(); ++k) {
      ExactnessReport::Degree d{};
      d.degree = k;
      d.rank = res.rank(k);
      d.kernel_dim = k == 0 ? order - 1 : d.rank * order - image_rank[k];
      d.next_image_dim = k < res.length() ? image_rank[k + 1] : 0;
      d.composite_zero = true;
      if (k < res.length()) {
        const auto& next = res.differential(k + 1);
        for (const auto& img : next.images()) {
          const bool zero = k == 0 ? img.total() == 0 : res.differential(k).apply(img).is_zero();
          if (!zero) d.composite_zero = false;
        }
      }
      d.exact = k >= res.length() || d.kernel_dim == d.next_image_dim;
      d.minimal = k == 0 || res.differential(k).augmented().is_zero();
      if (!d.composite_zero)
        fail(k == 0 ? std::string("augmentation of d_1 is nonzero")
                    : "d_" + std::to_string(k) + " d_" + std::to_string(k + 1) + " is nonzero");
      if (!d.exact)
        fail("not exact at P_" + std::to_string(k) + ": kernel " + std::to_string(d.kernel_dim) + ", image " +
             std::to_string(d.next_image_dim));
      if (res.strategy() == Strategy::minimal && !d.minimal)
        fail("d_" + std::to_string(k) + " has entries outside the augmentation ideal");
      report.degrees.push_back(d);
    }
  } catch (const std::exception& e) {
    fail(std::string("verification aborted: ") + e.what());
  }
  return report;
}

std::vector<std::size_t> cohomology_dims(const Resolution& res, std::size_t n) {
  if (res.length() < n + 1)
    throw std::out_of_range("cohomology up to degree " + std::to_string(n) + " needs length " +
                            std::to_string(n + 1));
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= n; ++k) dims.push_back(res.cohomology_dim(k));
  return dims;
}

// ------------------------------------------------------------------ classes

CohClass make_class(const ResolutionPtr& res, std::size_t n, const FpVector& cocycle) {
  if (cocycle.size() != res->rank(n)) throw DimensionMismatch("cochain length differs from the rank");
  res->coordinates(n, cocycle);  // validates the cocycle condition
  return CohClass{res, n, res->canonical(n, cocycle)};
}

std::vector<CohClass> cocycle_basis(const ResolutionPtr& res, std::size_t n) {
  const auto& q = res->cohomology(n).quotient;
  std::vector<CohClass> out;
  for (std::size_t i = 0; i < q.dim(); ++i) out.push_back(CohClass{res, n, q.basis().row(i)});
  return out;
}

CohClass class_from_coordinates(const ResolutionPtr& res, std::size_t n, const FpVector& coords) {
  const auto& q = res->cohomology(n).quotient;
  if (coords.size() != q.dim()) throw DimensionMismatch("coordinate vector has the wrong length");
  FpVector v(res->prime(), res->rank(n));
  for (std::size_t i = 0; i < q.dim(); ++i)
    if (coords[i]) v.add_scaled(q.basis().row(i), coords[i]);
  return CohClass{res, n, v};
}

CohClass zero_class(const ResolutionPtr& res, std::size_t n) {
  return CohClass{res, n, FpVector(res->prime(), res->rank(n))};
}

CohClass operator+(const CohClass& a, const CohClass& b) {
  if (a.resolution != b.resolution || a.degree != b.degree)
    throw std::invalid_argument("adding classes of different degrees or resolutions");
  return CohClass{a.resolution, a.degree, a.cocycle + b.cocycle};
}

CohClass scale(const CohClass& a, std::uint32_t c) {
  CohClass out = a;
  out.cocycle.scale(c % a.resolution->prime());
  return out;
}

std::vector<FpVector> hom_basis(const FiniteGroup& g, std::uint32_t p) {
  const std::size_t n = g.order();
  const auto& gens = g.generators();
  FpMatrix eq(p, gens.size() * n, n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element b = 0; b < n; ++b) {
      // chi(s b) - chi(s) - chi(b) = 0; entries accumulate when indices coincide
      const std::size_t r = i * n + b;
      auto bump = [&](std::size_t c, std::uint32_t v) { eq.set(r, c, (eq.get(r, c) + v) % p); };
      bump(g.mul(gens[i], b), 1);
      bump(gens[i], p - 1);
      bump(b, p - 1);
    }
  auto k = kernel_basis(eq);
  return k.basis().row_vectors();
}

std::optional<FpVector> hom_from_generator_values(const FiniteGroup& g, std::uint32_t p,
                                                  const std::vector<std::uint32_t>& values) {
  const auto& gens = g.generators();
  if (values.size() != gens.size()) throw DimensionMismatch("one value per generator expected");
  const std::size_t n = g.order();
  std::vector<int> chi(n, -1);
  chi[0] = 0;
  std::vector<Element> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Element b = queue[q];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Element c = g.mul(gens[i], b);
      const int v = static_cast<int>((values[i] + static_cast<std::uint32_t>(chi[b])) % p);
      if (chi[c] < 0) {
        chi[c] = v;
        queue.push_back(c);
      }
    }
  }
  // Every edge must agree, which gives chi(s b) = chi(s) + chi(b) for all s, b.
  for (Element b = 0; b < n; ++b)
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (static_cast<std::uint32_t>(chi[g.mul(gens[i], b)]) !=
          (values[i] + static_cast<std::uint32_t>(chi[b])) % p)
        return std::nullopt;
  FpVector out(p, n);
  for (std::size_t x = 0; x < n; ++x) out.set(x, static_cast<std::uint32_t>(chi[x]));
  return out;
}

CohClass class_of_hom(const ResolutionPtr& res, const FpVector& chi) {
  if (chi.size() != res->group()->order()) throw DimensionMismatch("hom table has the wrong length");
  const auto& d1 = res->differential(1);
  FpVector f(res->prime(), d1.source_rank());
  for (std::size_t i = 0; i < d1.source_rank(); ++i) f.set(i, d1.image(i).dot(chi));
  return make_class(res, 1, f);
}

CohClass generator_dual(const ResolutionPtr& res, const std::string& generator) {
  const auto& g = *res->group();
  const auto& names = g.generator_names();
  std::vector<std::uint32_t> values(names.size(), 0);
  bool found = false;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == generator) {
      values[i] = 1;
      found = true;
    }
  if (!found) throw std::invalid_argument("no generator named '" + generator + "'");
  auto chi = hom_from_generator_values(g, res->prime(), values);
  if (!chi) throw std::invalid_argument("no homomorphism to F_p is dual to generator '" + generator + "'");
  return class_of_hom(res, *chi);
}

std::vector<FpVector> h1_as_homs(const ResolutionPtr& res) {
  const std::uint32_t p = res->prime();
  const auto homs = hom_basis(*res->group(), p);
  const std::size_t dim = res->cohomology_dim(1);
  if (homs.size() != dim) throw std::logic_error("dim H^1 differs from dim Hom(G, F_p)");
  std::vector<FpVector> coords;
  for (const auto& chi : homs) coords.push_back(class_of_hom(res, chi).coordinates());
  RowSolver solver(FpMatrix::from_rows(p, dim, coords));
  std::vector<FpVector> out;
  for (std::size_t i = 0; i < dim; ++i) {
    FpVector unit(p, dim);
    unit.set(i, 1);
    auto a = solver.solve(unit);
    if (!a) throw std::logic_error("degree-one classes of homs are dependent");
    FpVector chi(p, res->group()->order());
    for (std::size_t k = 0; k < homs.size(); ++k)
      if ((*a)[k]) chi.add_scaled(homs[k], (*a)[k]);
    out.push_back(chi);
  }
  return out;
}

// ------------------------------------------------------------------ cache

namespace {

constexpr char kMagic[8] = {'C', 'O', 'H', 'O', 'R', 'E', 'S', '1'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool take(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
  return a.order() == b.order() && a.table() == b.table();
}

}  // namespace

std::filesystem::path cache_directory(const std::optional<std::string>& override_dir) {
  if (override_dir) return *override_dir;
  if (const char* env = std::getenv("COHOFORGE_CACHE"); env && *env) return env;
  return ".cohoforge-cache";
}

std::string cache_file_name(const FiniteGroup& g, std::uint32_t p, std::size_t n, Strategy strategy) {
  return hex(g.fingerprint()) + "_p" + std::to_string(p) + "_N" + std::to_string(n) + "_" +
         to_string(strategy) + ".res";
}

void save_resolution(const Resolution& res, const std::filesystem::path& file) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp);
    os.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(os, res.prime());
    put<std::uint32_t>(os, static_cast<std::uint32_t>(res.length()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(res.group()->order()));
    put<std::uint8_t>(os, res.strategy() == Strategy::minimal ? 0 : 1);
    put<std::uint64_t>(os, res.group()->fingerprint());
    for (auto r : res.ranks()) put<std::uint32_t>(os, static_cast<std::uint32_t>(r));
    for (std::size_t k = 1; k <= res.length(); ++k)
      for (const auto& img : res.differential(k).images())
        os.write(reinterpret_cast<const char*>(img.entries().data()),
                 static_cast<std::streamsize>(img.size()));
    if (!os) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

ResolutionPtr load_resolution(const GroupPtr& g, const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) return nullptr;
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) return nullptr;
  std::uint32_t p = 0, n = 0, order = 0;
  std::uint8_t strategy = 0;
  std::uint64_t fingerprint = 0;
  if (!take(is, p) || !take(is, n) || !take(is, order) || !take(is, strategy) || !take(is, fingerprint))
    return nullptr;
  if (order != g->order() || fingerprint != g->fingerprint() || !is_prime(p) || strategy > 1) return nullptr;
  std::vector<std::uint32_t> ranks(n + 1);
  for (auto& r : ranks)
    if (!take(is, r)) return nullptr;
  if (ranks[0] != 1) return nullptr;
  std::vector<FreeModuleMap> diffs;
  std::vector<std::uint8_t> buf;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t width = static_cast<std::size_t>(ranks[k - 1]) * order;
    buf.resize(width);
    std::vector<FpVector> images;
    for (std::size_t i = 0; i < ranks[k]; ++i) {
      if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(width))) return nullptr;
      FpVector v(p, width);
      for (std::size_t c = 0; c < width; ++c) {
        if (buf[c] >= p) return nullptr;
        v.set(c, buf[c]);
      }
      images.push_back(std::move(v));
    }
    diffs.emplace_back(g, p, ranks[k], ranks[k - 1], std::move(images));
  }
  if (is.peek() != std::char_traits<char>::eof()) return nullptr;
  return std::make_shared<const Resolution>(g, p, strategy == 0 ? Strategy::minimal : Strategy::greedy,
                                            std::move(diffs));
}

ResolutionCache::ResolutionCache(std::filesystem::path dir, BuildOptions options)
    : dir_(std::move(dir)), options_(options) {}

std::vector<ResolutionPtr> ResolutionCache::resolutions() {
  std::lock_guard lock(mutex_);
  return memory_;
}

ResolutionPtr ResolutionCache::get(const GroupPtr& g, std::uint32_t p, std::size_t n, Strategy strategy) {
  {
    std::lock_guard lock(mutex_);
    for (const auto& r : memory_)
      if (r->prime() == p && r->strategy() == strategy && r->length() >= n && r->group() == g) return r;
  }
  ResolutionPtr found;
  if (!dir_.empty()) {
    // Smallest cached length that is long enough.
    const std::string prefix = hex(g->fingerprint()) + "_p" + std::to_string(p) + "_N";
    const std::string suffix = "_" + to_string(strategy) + ".res";
    std::size_t best = static_cast<std::size_t>(-1);
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir_, ec)) {
      const auto name = entry.path().filename().string();
      if (name.rfind(prefix, 0) != 0 || name.size() <= prefix.size() + suffix.size() ||
          name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
        continue;
      const auto digits = name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
      if (digits.find_first_not_of("0123456789") != std::string::npos) continue;
      const std::size_t len = std::stoul(digits);
      if (len >= n && len < best) {
        auto candidate = load_resolution(g, entry.path());
        if (candidate && same_table(*candidate->group(), *g) && candidate->prime() == p &&
            candidate->strategy() == strategy) {
          best = len;
          found = std::move(candidate);
        }
      }
    }
  }
  if (found) {
    std::lock_guard lock(mutex_);
    ++disk_hits_;
  } else {
    found = build_resolution(g, p, n, strategy, options_);
    std::lock_guard lock(mutex_);
    ++builds_;
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      try {
        save_resolution(*found, dir_ / cache_file_name(*g, p, n, strategy));
      } catch (const std::exception&) {
        // An unwritable cache only costs a rebuild next time.
      }
    }
  }
  std::lock_guard lock(mutex_);
  memory_.push_back(found);
  return found;
}

}  // namespace cohoforge
