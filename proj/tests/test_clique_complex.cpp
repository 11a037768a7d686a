#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "diracflow/clique_complex.hpp"
#include "diracflow/graph.hpp"
#include "test_helpers.hpp"

using namespace diracflow;
using namespace diracflow::testing;

TEST_CASE("K2 complex") {
  auto c = build_clique_complex(complete_graph(2));
  CHECK(c.f_vector() == std::vector<int>{2, 1});
  CHECK(c.total_dim() == 3);
  CHECK(euler_characteristic(c) == 1);
  CHECK(clique_polynomial(c) == std::vector<int>{2, 1});
}

TEST_CASE("edgeless graph has only vertices") {
  auto c = build_clique_complex(make_graph(3, {}));
  CHECK(c.f_vector() == std::vector<int>{3});
  CHECK(c.total_dim() == 3);
  CHECK(euler_characteristic(c) == 3);
}

TEST_CASE("K3 against the brute-force oracle") {
  auto g = complete_graph(3);
  auto c = build_clique_complex(g);
  auto oracle = brute_force_cliques(g);
  REQUIRE(c.dimensions() == 3);
  for (int p = 0; p < 3; ++p) CHECK(c.simplices(p) == oracle[p]);
  CHECK(c.f_vector() == std::vector<int>{3, 3, 1});
  CHECK(c.total_dim() == 7);
  CHECK(euler_characteristic(c) == 1);
  CHECK(clique_polynomial(c) == std::vector<int>{3, 3, 1});
}

TEST_CASE("random graphs match the brute-force oracle") {
  for (std::uint64_t seed : {1, 3, 9}) {
    auto g = generate_erdos_renyi(10, 0.4, seed);
    auto c = build_clique_complex(g);
    auto oracle = brute_force_cliques(g);
    REQUIRE(c.dimensions() == static_cast<int>(oracle.size()));
    for (int p = 0; p < c.dimensions(); ++p) CHECK(c.simplices(p) == oracle[p]);
  }
}

TEST_CASE("face closure") {
  auto g = generate_erdos_renyi(12, 0.5, 5);
  auto c = build_clique_complex(g);
  for (int p = 1; p < c.dimensions(); ++p)
    for (const auto& s : c.simplices(p))
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        SimplicialComplex::Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        CHECK(c.index_of(p - 1, face) >= 0);
      }
}

TEST_CASE("deterministic rebuild") {
  auto g = generate_erdos_renyi(14, 0.4, 21);
  auto a = build_clique_complex(g);
  auto b = build_clique_complex(g);
  REQUIRE(a.dimensions() == b.dimensions());
  CHECK(a.f_vector() == b.f_vector());
  for (int p = 0; p < a.dimensions(); ++p) CHECK(a.simplices(p) == b.simplices(p));
}

TEST_CASE("ordering is lexicographic and indices are prefix sums") {
  auto c = build_clique_complex(generate_erdos_renyi(11, 0.5, 2));
  int offset = 0;
  for (int p = 0; p < c.dimensions(); ++p) {
    CHECK(c.offset(p) == offset);
    offset += c.f_vector()[p];
    const auto& dim = c.simplices(p);
    CHECK(std::is_sorted(dim.begin(), dim.end()));
    for (const auto& s : dim) CHECK(std::is_sorted(s.begin(), s.end()));
  }
  CHECK(offset == c.total_dim());
}

TEST_CASE("max_dim truncation") {
  auto c = build_clique_complex(complete_graph(3), 1);
  CHECK(c.f_vector() == std::vector<int>{3, 3});
  auto c0 = build_clique_complex(complete_graph(4), 0);
  CHECK(c0.f_vector() == std::vector<int>{4});
}

TEST_CASE("chi = clique polynomial at -1") {
  for (std::uint64_t seed : {2, 4, 6}) {
    auto c = build_clique_complex(generate_erdos_renyi(9, 0.5, seed));
    CHECK(alternating_sum(clique_polynomial(c)) == euler_characteristic(c));
  }
  CHECK(alternating_sum({20, 86, 114, 57, 9}) == 0);
}

TEST_CASE("empty graph") {
  auto c = build_clique_complex(make_graph(0, {}));
  CHECK(c.total_dim() == 0);
  CHECK(c.f_vector().empty());
  CHECK(euler_characteristic(c) == 0);
}

TEST_CASE("erdos-renyi generator") {
  CHECK(generate_erdos_renyi(0, 0.5, 1).vertex_count == 0);
  auto k5 = generate_erdos_renyi(5, 1.0, 123);
  CHECK(k5.edge_count() == 10);
  CHECK(generate_erdos_renyi(6, 0.0, 9).edge_count() == 0);

  auto a = generate_erdos_renyi(20, 0.45, 7);
  auto b = generate_erdos_renyi(20, 0.45, 7);
  CHECK(a.edges == b.edges);
  CHECK(a.edge_count() == 84);  // frozen for the fixed splitmix64 stream
  CHECK(generate_erdos_renyi(20, 0.45, 8).edges != a.edges);
}

TEST_CASE("splitmix64 reference values") {
  // First outputs for state 0, frozen against the published constants.
  std::uint64_t state = 0;
  CHECK(splitmix64_next(state) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64_next(state) == 0x6E789E6AA1B965F4ULL);
  CHECK(splitmix64_next(state) == 0x06C45D188009454FULL);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(make_graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(-1, {}), std::invalid_argument);
  auto g = make_graph(3, {{1, 0}, {0, 1}, {2, 1}});
  CHECK(g.edge_count() == 2);  // normalized and deduplicated
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# two points joined\n0 1\n\n# done\n");
  auto g = parse_edge_list(in);
  CHECK(g.vertex_count == 2);
  CHECK(g.edge_count() == 1);
  auto c = build_clique_complex(g);
  CHECK(c.f_vector() == std::vector<int>{2, 1});
  CHECK(euler_characteristic(c) == 1);

  std::istringstream bad("0\n");
  CHECK_THROWS_AS(parse_edge_list(bad), std::invalid_argument);
  std::istringstream bad2("0 1 2\n");
  CHECK_THROWS_AS(parse_edge_list(bad2), std::invalid_argument);
}

TEST_CASE("graph json round trip") {
  auto g = generate_erdos_renyi(8, 0.5, 3);
  std::istringstream in(graph_to_json(g));
  auto back = parse_graph_json(in);
  CHECK(back.vertex_count == g.vertex_count);
  CHECK(back.edges == g.edges);

  std::istringstream bad("{\"edges\": []}");
  CHECK_THROWS_AS(parse_graph_json(bad), std::invalid_argument);
}
