#include "cohoforge/scenarios.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cohoforge/catalog.hpp"
#include "cohoforge/group_spec.hpp"
#include "cohoforge/presented_ring.hpp"

namespace cohoforge {

// ------------------------------------------------------------------ reports

bool ScenarioReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::size_t ScenarioReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass;
  return n;
}

void ScenarioReport::add(std::string desc, std::string expected, std::string computed) {
  const bool ok = expected == computed;
  checks.push_back({std::move(desc), std::move(expected), std::move(computed), ok});
}

void ScenarioReport::add(std::string desc, bool expected, bool computed) {
  add(std::move(desc), std::string(expected ? "true" : "false"), std::string(computed ? "true" : "false"));
}

nlohmann::ordered_json to_json(const ScenarioReport& report, bool include_time) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["scenario"] = report.scenario;
  j["params"] = report.params;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    j["checks"].push_back({{"desc", c.desc}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  j["pass"] = report.pass();
  if (include_time) j["wall_ms"] = report.wall_ms;
  j["result"] = report.result;
  return j;
}

std::string to_text(const ScenarioReport& report) {
  std::ostringstream out;
  out << "scenario " << report.scenario << " " << report.params.dump() << "\n";
  for (const auto& c : report.checks)
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.desc << ": expected " << c.expected << ", computed "
        << c.computed << "\n";
  if (!report.checks.empty())
    out << report.passed() << "/" << report.checks.size() << " checks passed (" << static_cast<long long>(report.wall_ms)
        << " ms)\n";
  return out.str();
}

// ------------------------------------------------------------------ helpers

ResolutionPtr obtain_resolution(const ScenarioOptions& options, const GroupPtr& g, std::uint32_t p, std::size_t n) {
  const auto strategy = is_p_group(g->order(), p) ? Strategy::minimal : Strategy::greedy;
  if (options.cache) return options.cache->get(g, p, n, strategy);
  return build_resolution(g, p, n, strategy);
}

std::string format_dims(const std::vector<std::size_t>& dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  explicit Timer(ScenarioReport& r) : report_(r), start_(Clock::now()) {}
  ~Timer() { report_.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count(); }

 private:
  ScenarioReport& report_;
  Clock::time_point start_;
};

std::string zero_or_not(const CohClass& c) { return c.is_zero() ? "0" : "nonzero"; }

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Dimension of the span of the given classes in H^degree.
std::size_t image_rank(const ResolutionPtr& res, std::size_t degree, const std::vector<CohClass>& classes) {
  std::vector<FpVector> coords;
  for (const auto& c : classes) coords.push_back(c.coordinates());
  return Subspace::span(res->prime(), res->cohomology_dim(degree), coords).dim();
}

constexpr const char* kHPresentation = "pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}";
constexpr const char* kZ8Z8Presentation = "pres{g,h | g^8, h^8, g*h*g^-1*h^-3}";
constexpr const char* kZ4Z4Presentation = "pres{g,h | g^4, h^4, g*h*g^-1*h^-3}";

struct QuaternionCore {
  GroupPtr q8;
  ResolutionPtr res;
  CohClass v;
};

QuaternionCore quaternion_core(const ScenarioOptions& options, std::size_t length) {
  auto q8 = realize("Q8");
  auto res = obtain_resolution(options, q8, 2, length);
  auto v = cocycle_basis(res, 4).at(0);
  return {q8, res, v};
}

// H x Z/2 -> Q8 with the second factor onto the centre: nonzero and in Dec^4.
void check_product_decomposition(ScenarioReport& report, const ScenarioOptions& options, const QuaternionCore& core,
                                 bool trivial_control) {
  auto hx = realize(std::string(kHPresentation) + "xC2");
  auto res = obtain_resolution(options, hx, 2, 5);
  auto phi = trivial_control ? parse_generator_map(hx, core.q8, "g->1,h->1,g2->1")
                             : parse_generator_map(hx, core.q8, "g->g,h->h,g2->g^2");
  ComparisonMap f(phi, res, core.res);
  auto image = f.pull_back(core.v);
  auto ladder = dec_ladder(res, 4);
  const bool ok = !image.is_zero() && is_fully_decomposable(image, ladder);
  report.add("inflation of v along H x Z/2 -> Q8 is nonzero and lies in Dec^4", "nonzero, in Dec^4",
             image.is_zero() ? std::string("0") : ok ? "nonzero, in Dec^4" : "nonzero, not in Dec^4");
}

void check_h_annihilates(ScenarioReport& report, const ScenarioOptions& options, const QuaternionCore& core) {
  auto h = realize(kHPresentation);
  auto res = obtain_resolution(options, h, 2, 5);
  auto phi = parse_generator_map(h, core.q8, "");
  std::size_t nonzero = 0;
  const auto basis = cocycle_basis(core.res, 4);
  for (const auto& c : basis) nonzero += !inflation(phi, res, core.res, c).is_zero();
  report.add("inflation along H(32) -> Q8 kills every H^4(Q8) basis class", "0 of " + std::to_string(basis.size()),
             std::to_string(nonzero) + " of " + std::to_string(basis.size()));
}

}  // namespace

// ------------------------------------------------------------------ cyclic tower

ScenarioReport scenario_cyclic_tower(std::uint32_t p, std::size_t n, const ScenarioOptions& options,
                                     bool identity_control) {
  if (p != 2 && p != 3 && p != 5) throw std::invalid_argument("cyclic tower needs p in {2,3,5}");
  if (n < 2 || n > 4) throw std::invalid_argument("cyclic tower needs 2 <= n <= 4");
  if (ipow(p, n) > kDefaultOrderCap) throw RealizeError("C_" + std::to_string(ipow(p, n)) + " exceeds the order cap");

  ScenarioReport report;
  report.scenario = "cyclic-tower";
  report.params = {{"p", p}, {"n", n}};
  if (identity_control) report.params["control"] = "identity";
  Timer timer(report);

  auto g = cyclic_group(ipow(p, n));
  auto q = identity_control ? g : cyclic_group(ipow(p, n - 1));
  auto phi = identity_control ? GroupHom::identity(g) : parse_generator_map(g, q, "");
  auto rg = obtain_resolution(options, g, p, 3);
  auto rq = obtain_resolution(options, q, p, 5);

  report.add("dims H^0..4 of the quotient", format_dims(std::vector<std::size_t>(5, 1)),
             format_dims(cohomology_dims(*rq, 4)));

  std::vector<CohClass> images;
  for (const auto& c : cocycle_basis(rq, 1)) images.push_back(inflation(phi, rg, rq, c));
  report.add("inflation is injective on H^1", "rank " + std::to_string(rq->cohomology_dim(1)),
             "rank " + std::to_string(image_rank(rg, 1, images)));

  auto y = cocycle_basis(rq, 2).at(0);
  report.add("H^2 generator inflates to 0", "0", zero_or_not(inflation(phi, rg, rq, y)));
  return report;
}

// ------------------------------------------------------------------ metacyclic

ScenarioReport scenario_metacyclic(std::uint32_t p, std::size_t n, std::size_t d, std::size_t k,
                                   const ScenarioOptions& options) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (n < 2) throw std::invalid_argument("metacyclic scenario needs n >= 2");
  if (d < 1) throw std::invalid_argument("metacyclic scenario needs d >= 1");
  const auto small_spec = p == 2 ? family_a2(n, d) : family_b(p, n, d, k);
  const auto big_spec = p == 2 ? family_a2(n + 1, d) : family_b(p, n + 1, d, k);
  const std::size_t big_order = p == 2 ? ipow(ipow(2, n + 1), d) * 2 : ipow(ipow(p, n + 1), d + 1);
  if (big_order > 256 && !options.extended)
    throw BudgetError("target group of order " + std::to_string(big_order) + " is in the extended tier");

  ScenarioReport report;
  report.scenario = "metacyclic";
  report.params = {{"p", p}, {"n", n}, {"d", d}};
  if (p != 2) report.params["k"] = k;
  Timer timer(report);

  auto small = realize(GroupSpec{small_spec});
  auto big = realize(GroupSpec{big_spec}, RealizeOptions{kDefaultOrderCap, kDefaultCosetBound});
  const std::string small_name = print_group_spec(GroupSpec{small_spec});
  const std::string big_name = print_group_spec(GroupSpec{big_spec});
  report.params["source"] = big_name;
  report.params["target"] = small_name;

  auto rs = obtain_resolution(options, small, p, 5);
  auto rb = obtain_resolution(options, big, p, 3);

  std::vector<std::size_t> expected;
  for (std::size_t m = 0; m <= 4; ++m) expected.push_back(binomial(m + d, d));
  const auto dims = cohomology_dims(*rs, 4);
  report.add("dims H^0..4 of " + small_name, format_dims(expected), format_dims(dims));

  // degree-one identities between the generator duals
  const auto wx = generator_dual(rs, "x");
  std::vector<std::string> ys;
  if (d == 1) {
    ys.push_back("y");
  } else {
    for (std::size_t i = 1; i <= d; ++i) ys.push_back("y" + std::to_string(i));
  }
  bool identities = true;
  for (const auto& y : ys) {
    const auto w = generator_dual(rs, y);
    if (p == 2) {
      identities = identities && cup(w, w) == cup(wx, w);
    } else {
      identities = identities && cup(w, w).is_zero() && cup(wx, wx).is_zero();
    }
  }
  report.add(p == 2 ? "w^2 = w_x w for every kernel generator dual" : "odd-degree squares vanish", true, identities);

  auto phi = parse_generator_map(big, small, "");
  auto ladder = dec_ladder(rb, 2);
  std::size_t inside = 0;
  const auto h2 = cocycle_basis(rs, 2);
  for (const auto& c : h2) inside += is_fully_decomposable(inflation(phi, rb, rs, c), ladder);
  report.add("H^2 basis classes inflating into Dec^2 of " + big_name,
             std::to_string(h2.size()) + " of " + std::to_string(h2.size()),
             std::to_string(inside) + " of " + std::to_string(h2.size()));

  std::vector<RingGenerator> gens{{"wx", 1}};
  std::vector<std::string> relations;
  for (std::size_t i = 1; i <= d; ++i) {
    const auto idx = std::to_string(i);
    gens.push_back({"w" + idx, 1});
    gens.push_back({"c" + idx, 2});
    if (p == 2) relations.push_back("w" + idx + "^2 + wx*w" + idx);
  }
  if (p != 2) gens.push_back({"cx", 2});
  const auto ring = presented_ring_dims(p, gens, relations, default_parity(p), 4);
  report.add("dims match the presented ring", format_dims(ring), format_dims(dims));
  return report;
}

// ------------------------------------------------------------------ quaternion

ScenarioReport scenario_quaternion(const ScenarioOptions& options, bool trivial_control) {
  ScenarioReport report;
  report.scenario = "quaternion";
  if (trivial_control) report.params["control"] = "trivial";
  Timer timer(report);

  const auto core = quaternion_core(options, 9);
  report.add("dims H^0..8(Q8)", "(1,2,2,1,1,2,2,1,1)", format_dims(cohomology_dims(*core.res, 8)));
  report.add("Dec dims of Q8 in degrees 0..4", "(1,2,2,1,0)", format_dims(dec_ladder(core.res, 4).dims()));
  check_h_annihilates(report, options, core);
  check_product_decomposition(report, options, core, trivial_control);

  auto z8 = realize(kZ8Z8Presentation);
  auto rz8 = obtain_resolution(options, z8, 2, 5);
  auto v_z8 = inflation(parse_generator_map(z8, core.q8, ""), rz8, core.res, core.v);
  report.add("inflation of v along Z/8 x| Z/8 -> Q8", "0", zero_or_not(v_z8));

  auto centre = subgroup_closure(core.q8, {core.q8->power(*core.q8->generator("g"), 2)});
  auto incl = inclusion(centre, "Z(Q8)");
  auto rc = obtain_resolution(options, incl.source(), 2, 5);
  report.add("restriction of v to the centre", "nonzero", zero_or_not(restriction(incl, rc, core.res, core.v)));

  auto h16 = realize(kZ4Z4Presentation);
  auto r16 = obtain_resolution(options, h16, 2, 5);
  const auto ring = presented_ring_dims(2, {{"z", 1}, {"y", 1}, {"x", 2}, {"w", 2}}, {"z^2", "y(y+z)"},
                                        Parity::commutative, 4);
  report.add("dims H^0..4(Z/4 x| Z/4) match F2[z,y,x,w]/(z^2, y(y+z))", format_dims(ring),
             format_dims(cohomology_dims(*r16, 4)));
  return report;
}

ScenarioReport scenario_splitting_without_vanishing(const ScenarioOptions& options) {
  ScenarioReport report;
  report.scenario = "splitting";
  Timer timer(report);

  const auto core = quaternion_core(options, 5);
  check_h_annihilates(report, options, core);
  check_product_decomposition(report, options, core, false);

  const auto q8_dims = cohomology_dims(*core.res, 4);
  const auto c2_dims = cohomology_dims(*obtain_resolution(options, realize("C2"), 2, 5), 4);
  const auto product = cohomology_dims(*obtain_resolution(options, realize("Q8xC2"), 2, 5), 4);
  report.add("dims H^0..4(Q8 x C2) equal the Kunneth convolution", format_dims(kunneth_dims(q8_dims, c2_dims)),
             format_dims(product));
  report.add("dims H^0..4(Q8 x C2)", "(1,3,5,6,7)", format_dims(product));
  const auto trivial = cohomology_dims(*obtain_resolution(options, realize("Q8xC1"), 2, 5), 4);
  report.add("dims H^0..4(Q8 x C1) equal dims H^0..4(Q8)", format_dims(q8_dims), format_dims(trivial));
  report.result = {{"note", "the order-2048 group is not constructed; its mechanism is the quaternion core above "
                            "together with Kunneth bookkeeping"}};
  return report;
}

// ------------------------------------------------------------------ census

namespace {

struct CensusRow {
  std::string name;
  std::size_t order = 0;
  bool classifier = false;
  std::vector<std::size_t> dims, dec_dims;
  std::optional<std::size_t> witness;
  std::string error;
};

CensusRow census_row(const CatalogEntry& entry, std::uint32_t p, std::size_t n, const ScenarioOptions& options) {
  CensusRow row;
  row.name = entry.name;
  row.order = entry.order;
  try {
    auto g = realize_entry(entry);
    row.classifier = degree_one_classifier(g, p).generated_in_degree_one;
    auto res = obtain_resolution(options, g, p, n + 1);
    row.dims = cohomology_dims(*res, n);
    row.dec_dims = dec_ladder(res, n).dims();
    for (std::size_t k = 0; k <= n; ++k)
      if (row.dec_dims[k] != row.dims[k]) {
        row.witness = k;
        break;
      }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

ScenarioReport scenario_census(std::uint32_t p, std::size_t n, const ScenarioOptions& options) {
  if (p != 2 && p != 3) throw std::invalid_argument("census needs p in {2,3}");
  if (n < 1 || n > 5) throw std::invalid_argument("census needs 1 <= N <= 5");
  ScenarioReport report;
  report.scenario = "census";
  report.params = {{"p", p}, {"max_degree", n}};
  Timer timer(report);

  std::vector<const CatalogEntry*> entries;
  for (const auto& e : census_catalog())
    if (e.order % p == 0) entries.push_back(&e);

  std::vector<CensusRow> rows(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) rows[i] = census_row(*entries[i], p, n, options);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, entries.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const std::string all_equal = "Dec = H through degree " + std::to_string(n);
  report.result = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    const std::string desc = row.name + ": classifier " + (row.classifier ? "true" : "false");
    if (!row.error.empty()) {
      report.checks.push_back({desc, row.classifier ? all_equal : "witness degree <= " + std::to_string(n),
                               "error: " + row.error, false});
    } else if (row.classifier) {
      report.add(desc, all_equal, row.witness ? "Dec != H in degree " + std::to_string(*row.witness) : all_equal);
    } else {
      report.checks.push_back({desc, "witness degree <= " + std::to_string(n),
                               row.witness ? "witness degree " + std::to_string(*row.witness) : all_equal,
                               row.witness.has_value()});
    }
    nlohmann::ordered_json j = {{"group", row.name},          {"order", row.order},
                                {"classifier", row.classifier}, {"dims", row.dims},
                                {"dec_dims", row.dec_dims}};
    j["witness"] = row.witness ? nlohmann::ordered_json(*row.witness) : nlohmann::ordered_json(nullptr);
    if (!row.error.empty()) j["error"] = row.error;
    report.result.push_back(std::move(j));
  }
  return report;
}

// ------------------------------------------------------------------ dispatch

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{"cyclic-tower", "metacyclic", "quaternion", "splitting", "census"};
  return ids;
}

ScenarioReport run_scenario(const std::string& id, const ScenarioParams& params, const ScenarioOptions& options) {
  if (id == "cyclic-tower") return scenario_cyclic_tower(params.p.value_or(2), params.n.value_or(2), options);
  if (id == "metacyclic")
    return scenario_metacyclic(params.p.value_or(2), params.n.value_or(2), params.d.value_or(1), params.k.value_or(1),
                               options);
  if (id == "quaternion") return scenario_quaternion(options);
  if (id == "splitting") return scenario_splitting_without_vanishing(options);
  if (id == "census") return scenario_census(params.p.value_or(2), params.max_degree.value_or(5), options);
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

}  // namespace cohoforge
