// Acceptance run: one PASS/FAIL line per criterion with its time limit.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#include "cohoforge/cohomology.hpp"
#include "cohoforge/group_spec.hpp"
#include "cohoforge/presented_ring.hpp"
#include "cohoforge/resolution.hpp"
#include "cohoforge/scenarios.hpp"

using namespace cohoforge;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs < limit_s;
  const bool pass = out.pass && in_time;
  failures += !pass;
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.2f s, limit %g s", secs, limit_s);
  std::cout << "[" << (pass ? "PASS" : "FAIL") << "] " << id << " " << title << ": " << out.detail << " (" << timing
            << (in_time ? "" : ", over time") << ")" << std::endl;
}

std::string report_detail(const ScenarioReport& r) {
  std::string s = std::to_string(r.passed()) + "/" + std::to_string(r.checks.size()) + " checks";
  for (const auto& c : r.checks)
    if (!c.pass) s += "; failed: " + c.desc + " (expected " + c.expected + ", computed " + c.computed + ")";
  return s;
}

// Span of all products of k degree-one basis classes.
std::size_t product_span(const ResolutionPtr& res, std::size_t k) {
  if (k == 0) return 1;
  const auto h1 = cocycle_basis(res, 1);
  std::vector<CohClass> layer = h1;
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<CohClass> next;
    for (const auto& a : layer)
      for (const auto& b : h1) next.push_back(cup(a, b));
    layer = std::move(next);
  }
  std::vector<FpVector> coords;
  for (const auto& c : layer) coords.push_back(c.coordinates());
  return Subspace::span(res->prime(), res->cohomology_dim(k), coords).dim();
}

struct Surjection {
  std::string source, target, map;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohoforge acceptance run"};
  bool extended = false;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_flag("--extended", extended, "also run the order-729 metacyclic tier");
  app.add_option("--threads", threads, "census worker threads");
  CLI11_PARSE(app, argc, argv);

  const auto cache_dir =
      std::filesystem::temp_directory_path() / ("cohoforge-acceptance-" + std::to_string(::getpid()));
  ScenarioOptions opts;
  opts.cache = std::make_shared<ResolutionCache>(cache_dir);
  opts.threads = threads;
  opts.extended = extended;
  auto resolve = [&](const std::string& spec, std::uint32_t p, std::size_t n) {
    return obtain_resolution(opts, realize(spec), p, n);
  };

  run("1", "Q8 dimensions", 10, [&] {
    const auto dims = format_dims(cohomology_dims(*resolve("Q8", 2, 9), 8));
    return Outcome{dims == "(1,2,2,1,1,2,2,1,1)", "dims H^0..8 = " + dims};
  });

  run("2", "Q8 decomposables", 60, [&] {
    auto res = resolve("Q8", 2, 9);
    const auto ladder = dec_ladder(res, 4);
    const auto dec = ladder.dims();
    std::vector<std::size_t> products;
    for (std::size_t k = 0; k <= 4; ++k) products.push_back(product_span(res, k));
    const auto sub = presented_ring_dims(2, {{"z", 1}, {"y", 1}}, {"y^2+y*z+z^2", "y^2*z+y*z^2"},
                                         Parity::commutative, 4);
    const auto full = presented_ring_dims(2, {{"z", 1}, {"y", 1}, {"v", 4}}, {"y^2+y*z+z^2", "y^2*z+y*z^2"},
                                          Parity::commutative, 8);
    bool none = true;
    for (const auto& c : cocycle_basis(res, 4)) none = none && !is_fully_decomposable(c, ladder);
    const bool ok = format_dims(dec) == "(1,2,2,1,0)" && dec == products && dec == sub &&
                    full == cohomology_dims(*res, 8) && none;
    return Outcome{ok, "Dec dims " + format_dims(dec) + ", products " + format_dims(products) + ", ring " +
                           format_dims(sub) + ", H^4 indecomposable " + (none ? "yes" : "no")};
  });

  // Criteria 3 to 5 share the Q8 resolution built for criterion 1.
  auto q8 = realize("Q8");
  auto pull_v = [&](const std::string& spec, const std::string& map) {
    auto g = realize(spec);
    auto rg = obtain_resolution(opts, g, 2, 5);
    auto rq = obtain_resolution(opts, q8, 2, 9);
    return std::make_pair(rg, inflation(parse_generator_map(g, q8, map), rg, rq, cocycle_basis(rq, 4).at(0)));
  };

  run("3", "inflation along H(32) -> Q8 annihilates H^4", 60, [&] {
    auto h = realize("pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}");
    auto rh = obtain_resolution(opts, h, 2, 5);
    auto rq = obtain_resolution(opts, q8, 2, 9);
    auto phi = parse_generator_map(h, q8, "");
    std::size_t nonzero = 0;
    for (const auto& c : cocycle_basis(rq, 4)) nonzero += !inflation(phi, rh, rq, c).is_zero();
    return Outcome{h->order() == 32 && nonzero == 0,
                   "|H| = " + std::to_string(h->order()) + ", nonzero images " + std::to_string(nonzero)};
  });

  run("4", "inflation along H x Z/2 -> Q8 is nonzero and in Dec^4", 300, [&] {
    auto [rg, v] = pull_v("pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}xC2", "g->g,h->h,g2->g^2");
    const bool dec = is_fully_decomposable(v, dec_ladder(rg, 4));
    return Outcome{rg->group()->order() == 64 && !v.is_zero() && dec,
                   std::string(v.is_zero() ? "zero" : "nonzero") + ", in Dec^4 " + (dec ? "yes" : "no")};
  });

  run("5", "inflation along Z/8 x| Z/8 -> Q8 vanishes", 300, [&] {
    auto [rg, v] = pull_v("pres{g,h | g^8, h^8, g*h*g^-1*h^-3}", "");
    return Outcome{rg->group()->order() == 64 && v.is_zero(), v.is_zero() ? "zero" : "nonzero"};
  });

  run("6", "cyclic towers (2,2), (2,3), (3,2)", 10, [&] {
    Outcome out{true, ""};
    for (auto [p, n] : {std::pair<std::uint32_t, std::size_t>{2, 2}, {2, 3}, {3, 2}}) {
      const auto r = scenario_cyclic_tower(p, n, opts);
      out.pass = out.pass && r.pass() && r.checks.size() == 3;
      out.detail += (out.detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) +
                    " n=" + std::to_string(n) + " " + report_detail(r);
    }
    return out;
  });

  run("7", "metacyclic A2(2;1) -> A2(3;1)", 30, [&] {
    const auto r = scenario_metacyclic(2, 2, 1, 1, opts);
    return Outcome{r.pass() && r.checks.size() == 4, report_detail(r)};
  });
  if (extended) {
    run("7e", "metacyclic extended tier B(3;2;1;1) -> B(3;3;1;1)", 600, [&] {
      const auto r = scenario_metacyclic(3, 2, 1, 1, opts);
      return Outcome{r.pass() && r.checks.size() == 4, report_detail(r)};
    });
  } else {
    std::cout << "[SKIP] 7e metacyclic extended tier: opt-in, run with --extended" << std::endl;
  }

  run("8", "dims of Z/4 x| Z/4, Z/8 x| Z/2, B(3;2;1;1) against presented rings", 120, [&] {
    struct Case {
      std::string spec;
      std::uint32_t p;
      std::vector<RingGenerator> gens;
      std::vector<std::string> rels;
    };
    const std::vector<Case> cases{
        {"pres{g,h | g^4, h^4, g*h*g^-1*h^-3}", 2, {{"z", 1}, {"y", 1}, {"x", 2}, {"w", 2}}, {"z^2", "y(y+z)"}},
        {"A2(3;1)", 2, {{"wx", 1}, {"w1", 1}, {"c1", 2}}, {"w1^2 + wx*w1"}},
        {"B(3;2;1;1)", 3, {{"wx", 1}, {"w1", 1}, {"c1", 2}, {"cx", 2}}, {}},
    };
    const std::vector<std::size_t> expected{1, 2, 3, 4, 5};
    Outcome out{true, ""};
    for (const auto& c : cases) {
      const auto dims = cohomology_dims(*resolve(c.spec, c.p, 5), 4);
      const auto ring = presented_ring_dims(c.p, c.gens, c.rels, default_parity(c.p), 4);
      out.pass = out.pass && dims == expected && ring == expected;
      out.detail += (out.detail.empty() ? "" : "; ") + c.spec + " " + format_dims(dims) + " ring " + format_dims(ring);
    }
    return out;
  });

  run("9", "census at p = 2 and p = 3 through degree 5", 600, [&] {
    Outcome out{true, ""};
    for (std::uint32_t p : {2u, 3u}) {
      const auto r = scenario_census(p, 5, opts);
      out.pass = out.pass && r.pass() && !r.checks.empty();
      out.detail += (out.detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + " " + report_detail(r);
    }
    return out;
  });

  run("10", "chain-map cup equals bar cup through total degree 3", 60, [&] {
    std::size_t pairs = 0, agree = 0;
    const std::vector<std::pair<std::string, std::uint32_t>> groups{{"C2", 2}, {"C4", 2}, {"C2xC2", 2},
                                                                    {"Q8", 2}, {"C3", 3}, {"C9", 3}};
    for (const auto& [spec, p] : groups) {
      auto res = build_resolution(realize(spec), p, 4, Strategy::minimal);
      BarComparison bar(res, 3);
      for (std::size_t da = 0; da <= 3; ++da)
        for (const auto& a : cocycle_basis(res, da))
          for (std::size_t db = 0; da + db <= 3; ++db)
            for (const auto& b : cocycle_basis(res, db)) {
              ++pairs;
              agree += cup_bar_oracle(bar, a, b) == cup(a, b);
            }
    }
    return Outcome{pairs > 0 && agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) + " pairs agree"};
  });

  run("11", "structural properties", 600, [&] {
    Outcome out{true, ""};
    auto note = [&](bool ok, const std::string& s) {
      out.pass = out.pass && ok;
      out.detail += (out.detail.empty() ? "" : "; ") + s + (ok ? " ok" : " FAILED");
    };

    const auto built = opts.cache->resolutions();
    std::size_t exact = 0;
    for (const auto& r : built) exact += verify_exactness(*r).pass;
    note(exact == built.size() && !built.empty(),
         "exactness " + std::to_string(exact) + "/" + std::to_string(built.size()) + " resolutions");

    const std::vector<Surjection> surjections{
        {"pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}", "Q8", ""},
        {"pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}xC2", "Q8", "g->g,h->h,g2->g^2"},
        {"pres{g,h | g^8, h^8, g*h*g^-1*h^-3}", "Q8", ""},
        {"Q8xC2", "Q8", "g->g,h->h,g2->1"},
        {"A2(3;1)", "A2(2;1)", ""},
        {"C8", "C4", ""},
        {"C9", "C3", ""},
        {"B(3;3;1;1)", "B(3;2;1;1)", ""},
    };
    std::size_t hom_checks = 0, hom_ok = 0, kernel_checks = 0, kernel_ok = 0;
    for (const auto& s : surjections) {
      if (s.source == "B(3;3;1;1)" && !extended) continue;
      auto g = realize(s.source);
      auto q = realize(s.target);
      const std::uint32_t p = q->order() % 2 == 0 ? 2 : 3;
      auto rg = obtain_resolution(opts, g, p, 5);
      auto rq = obtain_resolution(opts, q, p, 5);
      auto phi = parse_generator_map(g, q, s.map);
      for (std::size_t da = 1; da <= 3; ++da)
        for (const auto& a : cocycle_basis(rq, da))
          for (std::size_t db = 1; da + db <= 4; ++db)
            for (const auto& b : cocycle_basis(rq, db)) {
              ++hom_checks;
              hom_ok += inflation(phi, rg, rq, cup(a, b)) ==
                        cup(inflation(phi, rg, rq, a), inflation(phi, rg, rq, b));
            }
      auto incl = inclusion(phi.kernel(), "K");
      auto rk = obtain_resolution(opts, incl.source(), p, 5);
      for (std::size_t d = 1; d <= 4; ++d)
        for (const auto& c : cocycle_basis(rq, d)) {
          ++kernel_checks;
          kernel_ok += restriction(incl, rk, rg, inflation(phi, rg, rq, c)).is_zero();
        }
    }
    note(hom_ok == hom_checks, "inflation multiplicative " + std::to_string(hom_ok) + "/" + std::to_string(hom_checks));
    note(kernel_ok == kernel_checks,
         "res o inf on kernels " + std::to_string(kernel_ok) + "/" + std::to_string(kernel_checks));

    // transitivity through a further quotient
    std::size_t trans_checks = 0, trans_ok = 0;
    auto transit = [&](const std::string& top, const std::string& map, const std::string& mid,
                       const std::vector<std::pair<std::string, long long>>& normal_gens, std::uint32_t p) {
      auto g = realize(top);
      auto m = realize(mid);
      auto phi = parse_generator_map(g, m, map);
      std::vector<Element> seeds;
      for (const auto& [name, e] : normal_gens) seeds.push_back(m->power(*m->generator(name), e));
      auto quot = quotient(subgroup_closure(m, seeds), "Q");
      auto rg = obtain_resolution(opts, g, p, 5);
      auto rm = obtain_resolution(opts, m, p, 5);
      auto rq = obtain_resolution(opts, quot.group, p, 5);
      const auto composite = phi.then(quot.projection);
      for (std::size_t d = 1; d <= 4; ++d)
        for (const auto& a : cocycle_basis(rq, d)) {
          ++trans_checks;
          trans_ok += inflation(composite, rg, rq, a) == inflation(phi, rg, rm, inflation(quot.projection, rm, rq, a));
        }
    };
    transit("Q8xC2", "g->g,h->h,g2->1", "Q8", {{"g", 2}}, 2);
    transit("C27", "", "C9", {{"g", 3}}, 3);
    transit("A2(3;1)", "", "A2(2;1)", {{"y", 1}}, 2);
    note(trans_ok == trans_checks && trans_checks > 0,
         "transitivity " + std::to_string(trans_ok) + "/" + std::to_string(trans_checks));

    std::size_t comm_checks = 0, comm_ok = 0, sq_checks = 0, sq_ok = 0;
    for (const std::string spec : {"C9", "C3xC3", "B(3;2;1;1)"}) {
      auto res = resolve(spec, 3, 5);
      for (std::size_t da = 1; da <= 3; ++da) {
        const auto basis_a = cocycle_basis(res, da);
        for (std::size_t db = 1; da + db <= 4; ++db)
          for (const auto& a : basis_a)
            for (const auto& b : cocycle_basis(res, db)) {
              ++comm_checks;
              const auto ba = cup(b, a);
              comm_ok += cup(a, b) == ((da * db) % 2 ? scale(ba, 2) : ba);
            }
        if (da % 2 == 1 && 2 * da <= 4) {
          for (std::size_t i = 0; i < basis_a.size(); ++i)
            for (std::size_t j = i; j < basis_a.size(); ++j) {
              const auto c = i == j ? basis_a[i] : basis_a[i] + scale(basis_a[j], 2);
              ++sq_checks;
              sq_ok += cup(c, c).is_zero();
            }
        }
      }
    }
    note(comm_ok == comm_checks, "graded commutativity at p=3 " + std::to_string(comm_ok) + "/" +
                                     std::to_string(comm_checks));
    note(sq_ok == sq_checks, "odd squares vanish at p=3 " + std::to_string(sq_ok) + "/" + std::to_string(sq_checks));
    return out;
  });

  run("12", "Kunneth dims of Q8 x C2", 30, [&] {
    const auto q = cohomology_dims(*resolve("Q8", 2, 5), 4);
    const auto c = cohomology_dims(*resolve("C2", 2, 5), 4);
    const auto prod = cohomology_dims(*build_resolution(realize("Q8xC2"), 2, 5, Strategy::minimal), 4);
    const auto conv = kunneth_dims(q, c);
    return Outcome{format_dims(prod) == "(1,3,5,6,7)" && prod == conv,
                   "direct " + format_dims(prod) + ", convolution " + format_dims(conv)};
  });

  std::error_code ec;
  std::filesystem::remove_all(cache_dir, ec);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
