#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "cohoforge/catalog.hpp"
#include "cohoforge/group_spec.hpp"
#include "cohoforge/resolution.hpp"

using namespace cohoforge;

namespace {

std::vector<std::size_t> dims_of(const char* spec, std::uint32_t p, std::size_t n, Strategy s) {
  auto res = build_resolution(realize(spec), p, n + 1, s);
  return cohomology_dims(*res, n);
}

// Independent oracle: dim H^n from the normalized bar complex with trivial
// coefficients, built straight from the multiplication table.
std::vector<std::size_t> bar_dims(const FiniteGroup& g, std::uint32_t p, std::size_t n) {
  const std::size_t base = g.order() - 1;
  auto cells = [&](std::size_t k) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c *= base;
    return c;
  };
  auto index = [&](const std::vector<Element>& t) {
    std::size_t idx = 0;
    for (auto x : t) idx = idx * base + (x - 1);
    return idx;
  };
  // delta_k: C^k -> C^{k+1}, as a cells(k) x cells(k+1) matrix acting on rows.
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::vector<int>> m(cells(k), std::vector<int>(cells(k + 1), 0));
    for (std::size_t col = 0; col < cells(k + 1); ++col) {
      std::vector<Element> t(k + 1);
      std::size_t rest = col;
      for (std::size_t i = k + 1; i-- > 0;) {
        t[i] = static_cast<Element>(rest % base + 1);
        rest /= base;
      }
      auto bump = [&](const std::vector<Element>& face, int sign) {
        m[index(face)][col] += sign;
      };
      bump(std::vector<Element>(t.begin() + 1, t.end()), 1);
      for (std::size_t i = 0; i < k; ++i) {
        const Element prod = g.mul(t[i], t[i + 1]);
        if (prod == 0) continue;
        std::vector<Element> face(t.begin(), t.begin() + static_cast<long>(i));
        face.push_back(prod);
        face.insert(face.end(), t.begin() + static_cast<long>(i) + 2, t.end());
        bump(face, (i + 1) % 2 ? -1 : 1);
      }
      bump(std::vector<Element>(t.begin(), t.end() - 1), (k + 1) % 2 ? -1 : 1);
    }
    FpMatrix mat(p, cells(k), cells(k + 1));
    for (std::size_t r = 0; r < cells(k); ++r)
      for (std::size_t c = 0; c < cells(k + 1); ++c)
        mat.set(r, c, static_cast<std::uint32_t>(((m[r][c] % static_cast<int>(p)) + static_cast<int>(p)) % static_cast<int>(p)));
    ranks.push_back(rank(mat));
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(cells(k) - ranks[k] - (k ? ranks[k - 1] : 0));
  return out;
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("cohoforge-test-" + tag + "-" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cyclic groups have one class per degree") {
  CHECK(dims_of("C2", 2, 8, Strategy::minimal) == std::vector<std::size_t>(9, 1));
  CHECK(dims_of("C4", 2, 8, Strategy::minimal) == std::vector<std::size_t>(9, 1));
  CHECK(dims_of("C9", 3, 6, Strategy::minimal) == std::vector<std::size_t>(7, 1));
  CHECK(dims_of("C5", 5, 5, Strategy::minimal) == std::vector<std::size_t>(6, 1));
}

TEST_CASE("C2 minimal resolution is 1+g in every degree") {
  auto res = build_resolution(realize("C2"), 2, 5, Strategy::minimal);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(res->rank(n) == 1);
    const auto& img = res->differential(n).image(0);
    CHECK(img[0] == 1);
    CHECK(img[1] == 1);
  }
}

TEST_CASE("Q8 is periodic of period four") {
  auto res = build_resolution(realize("Q8"), 2, 9, Strategy::minimal);
  CHECK(res->ranks() == std::vector<std::size_t>{1, 2, 2, 1, 1, 2, 2, 1, 1, 2});
  CHECK(cohomology_dims(*res, 8) == std::vector<std::size_t>{1, 2, 2, 1, 1, 2, 2, 1, 1});
}

TEST_CASE("elementary abelian groups follow binomial counts") {
  CHECK(dims_of("V4", 2, 6, Strategy::minimal) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
  CHECK(dims_of("C2xC2xC2", 2, 4, Strategy::minimal) == std::vector<std::size_t>{1, 3, 6, 10, 15});
  CHECK(dims_of("C3xC3", 3, 4, Strategy::minimal) == std::vector<std::size_t>{1, 2, 3, 4, 5});
}

TEST_CASE("non p-groups need the greedy strategy") {
  CHECK(dims_of("S3", 2, 6, Strategy::greedy) == std::vector<std::size_t>(7, 1));
  CHECK(dims_of("S3", 3, 8, Strategy::greedy) == std::vector<std::size_t>{1, 0, 0, 1, 1, 0, 0, 1, 1});
  CHECK(dims_of("C6", 2, 4, Strategy::greedy) == std::vector<std::size_t>(5, 1));
  CHECK(dims_of("C5", 2, 4, Strategy::greedy) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  CHECK_THROWS_AS(build_resolution(realize("S3"), 2, 3, Strategy::minimal), std::invalid_argument);
  CHECK_THROWS_AS(build_resolution(realize("C4"), 4, 3, Strategy::greedy), std::invalid_argument);
}

TEST_CASE("dims agree with the bar complex oracle") {
  for (const auto& entry : census_catalog()) {
    if (entry.order > 16 || entry.order < 2) continue;
    auto g = realize_entry(entry);
    for (std::uint32_t p : {2u, 3u}) {
      CAPTURE(entry.name);
      CAPTURE(p);
      const std::size_t n = entry.order <= 6 ? 3 : 2;
      auto res = build_resolution(g, p, n + 1, Strategy::greedy);
      CHECK(cohomology_dims(*res, n) == bar_dims(*g, p, n));
    }
  }
}

TEST_CASE("property: minimal ranks equal cohomology and strategies agree") {
  for (const auto& entry : census_catalog()) {
    if (entry.order > 16) continue;
    auto g = realize_entry(entry);
    for (std::uint32_t p : {2u, 3u}) {
      CAPTURE(entry.name);
      CAPTURE(p);
      const std::size_t n = 3;
      auto greedy = build_resolution(g, p, n + 1, Strategy::greedy);
      const auto dims = cohomology_dims(*greedy, n);
      CHECK(verify_exactness(*greedy).pass);
      CHECK(dims[0] == 1);
      CHECK(dims[1] == abelianization_p_rank(g, p));
      if (!is_p_group(g->order(), p)) continue;
      auto minimal = build_resolution(g, p, n + 1, Strategy::minimal);
      CHECK(verify_exactness(*minimal).pass);
      for (std::size_t k = 0; k <= n; ++k) CHECK(minimal->rank(k) == dims[k]);
      CHECK(cohomology_dims(*minimal, n) == dims);
    }
  }
}

TEST_CASE("exactness check catches a corrupted differential") {
  auto res = build_resolution(realize("Q8"), 2, 4, Strategy::minimal);
  auto report = verify_exactness(*res);
  CHECK(report.pass);
  CHECK(report.degrees.size() == 5);
  for (const auto& d : report.degrees) CHECK(d.minimal);

  std::vector<FreeModuleMap> diffs;
  for (std::size_t n = 1; n <= res->length(); ++n) diffs.push_back(res->differential(n));
  auto images = diffs[1].images();
  images[0].set(3, images[0][3] + 1);
  diffs[1] = FreeModuleMap(res->group(), 2, diffs[1].source_rank(), diffs[1].target_rank(), images);
  Resolution broken(res->group(), 2, Strategy::minimal, diffs);
  auto bad = verify_exactness(broken);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("resolution shape validation") {
  auto g = realize("C2");
  FpVector v(2, 4);
  CHECK_THROWS(Resolution(g, 2, Strategy::greedy, {FreeModuleMap(g, 2, 1, 2, {v})}));
}

TEST_CASE("budget errors") {
  BuildOptions tight{64};
  CHECK_THROWS_AS(build_resolution(realize("V4"), 2, 20, Strategy::minimal, tight), BudgetError);
  CHECK_NOTHROW(build_resolution(realize("C2"), 2, 20, Strategy::minimal, tight));
}

TEST_CASE("classes, coordinates and lifting") {
  auto res = build_resolution(realize("V4"), 2, 4, Strategy::minimal);
  auto basis = cocycle_basis(res, 2);
  REQUIRE(basis.size() == 3);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto c = basis[i].coordinates();
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? 1u : 0u));
  }
  auto sum = basis[0] + basis[1];
  CHECK(sum == class_from_coordinates(res, 2, sum.coordinates()));
  CHECK((sum + basis[0] + basis[1]).is_zero());
  CHECK(scale(basis[2], 2).is_zero());
  CHECK(zero_class(res, 3).is_zero());

  FpVector not_boundary(2, res->rank(1) * 4);
  not_boundary.set(0, 1);
  CHECK_THROWS_AS(res->lift_through(1, not_boundary), std::logic_error);

  // a cochain that fails the cocycle condition on S3 in degree 1 at p = 3
  auto q = build_resolution(realize("S3"), 3, 3, Strategy::greedy);
  REQUIRE(q->rank(1) > q->cohomology(1).cocycles.dim());
  bool found_non_cocycle = false;
  for (std::size_t i = 0; i < q->rank(1) && !found_non_cocycle; ++i) {
    FpVector f(3, q->rank(1));
    f.set(i, 1);
    try {
      q->coordinates(1, f);
    } catch (const std::invalid_argument&) {
      found_non_cocycle = true;
    }
  }
  CHECK(found_non_cocycle);
}

TEST_CASE("degree one classes are homomorphisms") {
  for (const char* spec : {"Q8", "D8", "C4xC2", "A2(2;1)", "C3xC3", "S3"}) {
    CAPTURE(spec);
    auto g = realize(spec);
    const std::uint32_t p = g->order() % 3 == 0 && g->order() != 6 ? 3 : 2;
    auto res = build_resolution(g, p, 3, Strategy::greedy);
    const auto homs = h1_as_homs(res);
    const auto basis = cocycle_basis(res, 1);
    REQUIRE(homs.size() == basis.size());
    CHECK(homs.size() == hom_basis(*g, p).size());
    for (std::size_t i = 0; i < homs.size(); ++i) {
      for (Element a = 0; a < g->order(); ++a)
        for (Element b = 0; b < g->order(); ++b) CHECK(homs[i][g->mul(a, b)] == (homs[i][a] + homs[i][b]) % p);
      CHECK(class_of_hom(res, homs[i]) == basis[i]);
    }
  }
  auto d8 = build_resolution(realize("A2(2;1)"), 2, 3, Strategy::minimal);
  auto wx = generator_dual(d8, "x");
  auto wy = generator_dual(d8, "y");
  CHECK_FALSE(wx.is_zero());
  CHECK_FALSE(wy.is_zero());
  CHECK_FALSE(wx == wy);
  CHECK_THROWS_AS(generator_dual(d8, "z"), std::invalid_argument);
  auto c4 = build_resolution(realize("C4"), 3, 2, Strategy::greedy);
  CHECK_THROWS_AS(generator_dual(c4, "g"), std::invalid_argument);
}

TEST_CASE("cache round trip") {
  auto dir = temp_dir("cache");
  auto g = realize("Q8");
  {
    ResolutionCache cache(dir);
    auto a = cache.get(g, 2, 5, Strategy::minimal);
    auto b = cache.get(g, 2, 3, Strategy::minimal);
    CHECK(a == b);
    CHECK(cache.builds() == 1);
    CHECK(cache.disk_hits() == 0);
  }
  CHECK(std::filesystem::exists(dir / cache_file_name(*g, 2, 5, Strategy::minimal)));
  {
    ResolutionCache cache(dir);
    auto a = cache.get(g, 2, 4, Strategy::minimal);
    CHECK(cache.disk_hits() == 1);
    CHECK(cache.builds() == 0);
    CHECK(a->length() == 5);
    auto fresh = build_resolution(g, 2, 5, Strategy::minimal);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(a->differential(n).images() == fresh->differential(n).images());
    CHECK(verify_exactness(*a).pass);
    // a different group with the same order must not pick up this file
    auto d8 = realize("D8");
    CHECK(load_resolution(d8, dir / cache_file_name(*g, 2, 5, Strategy::minimal)) == nullptr);
    auto longer = cache.get(g, 2, 7, Strategy::minimal);
    CHECK(cache.builds() == 1);
    CHECK(longer->length() == 7);
  }
  // truncated file is rejected
  const auto file = dir / cache_file_name(*g, 2, 5, Strategy::minimal);
  std::filesystem::resize_file(file, std::filesystem::file_size(file) / 2);
  CHECK(load_resolution(g, file) == nullptr);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache directory resolution") {
  CHECK(cache_directory(std::string("/tmp/x")) == std::filesystem::path("/tmp/x"));
  CHECK(parse_strategy("greedy") == Strategy::greedy);
  CHECK(to_string(Strategy::minimal) == "minimal");
  CHECK_THROWS_AS(parse_strategy("fast"), std::invalid_argument);
}
