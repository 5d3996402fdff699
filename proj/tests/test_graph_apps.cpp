#include <doctest.h>

#include <sstream>

#include "equidivide/errors.hpp"
#include "equidivide/graph_apps.hpp"
#include "equidivide/oracles.hpp"
#include "support.hpp"

using namespace equidivide;
using namespace testing;

namespace {

double edge_scan_cut(const Graph& g, SubsetId s) {
  double c = 0;
  for (auto [u, v] : g.edges()) c += s.contains(u) != s.contains(v);
  return c;
}

void check_partition(const GraphPartition& p, int vertices) {
  CHECK(is_partition(p.parts, vertices));
  CHECK(p.gap <= p.bound + 1e-9);
  CHECK(p.gap == doctest::Approx(pairwise_gap(p.values)));
}

}  // namespace

TEST_CASE("graph parsing") {
  std::istringstream in("c comment\n# another\np 3 2\n1 2\n2 3\n");
  Graph g = Graph::parse_edge_list(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.max_degree() == 2);
  std::istringstream bad("p 3 2\n1 2\n");
  CHECK_THROWS_AS(Graph::parse_edge_list(bad), InputError);
  std::istringstream range("p 2 1\n1 3\n");
  CHECK_THROWS_AS(Graph::parse_edge_list(range), InputError);
  std::istringstream loop("p 2 1\n1 1\n");
  CHECK_THROWS_AS(Graph::parse_edge_list(loop), InputError);
}

TEST_CASE("cut and density values") {
  auto g = petersen();
  CHECK(cut_value(*g, SubsetId::empty()) == 0);
  CHECK(cut_value(*g, SubsetId::full(10)) == 0);
  auto path = Graph(3, {{0, 1}, {1, 2}});
  CHECK(cut_value(path, SubsetId::singleton(1)) == 2);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    SubsetId s(static_cast<std::uint64_t>(uniform_int(rng, 0, 1023)));
    CHECK(cut_value(*g, s) == edge_scan_cut(*g, s));
  }
  CHECK(density_value(*g, SubsetId::from_items({0, 2})) == 0);
  CHECK(density_value(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), SubsetId::full(3)) == 1.0);
  CHECK(density_value(*g, SubsetId::singleton(4)) == 0);
  CHECK(density_value(*g, SubsetId::empty()) == 0);
}

TEST_CASE("equitable cut partitions") {
  SUBCASE("petersen") {
    auto p = equitable_cut_partition(petersen(), 3);
    CHECK(p.bound == 16.0);
    CHECK(p.nonempty);
    check_partition(p, 10);
  }
  SUBCASE("singletons") {
    auto g = std::make_shared<const Graph>(5, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto p = equitable_cut_partition(g, 5);
    check_partition(p, 5);
    for (auto s : p.parts) CHECK(s.size() == 1);
    CHECK(p.gap == 3.0);
  }
  SUBCASE("single edge") {
    auto g = std::make_shared<const Graph>(2, std::vector<std::pair<int, int>>{{0, 1}});
    auto p = equitable_cut_partition(g, 2);
    CHECK(p.gap == 0.0);
    CHECK(p.parts[0].size() == 1);
  }
  SUBCASE("larger random graphs use the cake") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 3; ++trial) {
      const int n = 16;
      std::vector<std::pair<int, int>> e;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (uniform(rng) < 0.3) e.emplace_back(u, v);
        }
      }
      auto g = std::make_shared<const Graph>(n, e);
      auto p = equitable_cut_partition(g, 2);
      CHECK(p.nonempty);
      CHECK(p.bound == 5.0 * std::max(1, g->max_degree()) + 1.0);
      check_partition(p, n);
    }
  }
  CHECK_THROWS_AS(equitable_cut_partition(petersen(), 11), PreconditionError);
}

TEST_CASE("density partitions") {
  SUBCASE("one part") {
    auto d = density_partition(petersen(), 1);
    CHECK(d.nonempty.gap == 0.0);
  }
  SUBCASE("two triangles") {
    auto g = std::make_shared<const Graph>(
        6, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    auto d = density_partition(g, 2);
    check_partition(d.nonempty, 6);
    check_partition(d.empty_allowed, 6);
    CHECK(d.nonempty.bound == 6.0);
    CHECK(d.empty_allowed.bound == 4.0);
    auto inst = Instance::make_identical(SetFunction::density(g), 2);
    CHECK(brute_min_inequity(inst, true).gap == 0.0);
  }
  SUBCASE("five-cycle") {
    auto d = density_partition(cycle(5), 2);
    check_partition(d.nonempty, 5);
    CHECK(d.empty_allowed.gap <= 4.0);
    CHECK(d.nonempty.gap >= brute_min_inequity(Instance::make_identical(SetFunction::density(cycle(5)), 2), true).gap);
  }
}

TEST_CASE("cut functions are subadditive") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = uniform_int(rng, 2, 10);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (uniform(rng) < 0.5) e.emplace_back(u, v);
      }
    }
    CHECK(is_sigma_subadditive(SetFunction::cut(std::make_shared<const Graph>(n, e))));
  }
}
