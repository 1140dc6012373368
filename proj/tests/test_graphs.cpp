#include <doctest.h>

#include "ssekit/errors.hpp"
#include "ssekit/graphs.hpp"
#include "ssekit/lemmas.hpp"

using namespace ssekit;

namespace {

std::vector<Edge> edges(std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
  std::vector<Edge> out;
  for (auto [s, t] : list) out.push_back({s, t});
  return out;
}

}  // namespace

TEST_CASE("graph_from_matrix lists edges in canonical order") {
  auto g = graph_from_matrix(IntMatrix::of({{2}}));
  CHECK(g.vertex_count == 1);
  CHECK(g.edges == edges({{0, 0}, {0, 0}}));
  CHECK(graph_from_matrix(IntMatrix::of({{1, 1}, {1, 0}})).edges == edges({{0, 0}, {0, 1}, {1, 0}}));
  CHECK(graph_from_matrix(IntMatrix::of({{0, 2}, {1, 0}})).edges == edges({{0, 1}, {0, 1}, {1, 0}}));
  CHECK_THROWS_AS(graph_from_matrix(IntMatrix(2, 2)), DomainError);
  CHECK_THROWS_AS(graph_from_matrix(IntMatrix::of({{1, 1}})), ShapeError);
}

TEST_CASE("edge transition matrix") {
  CHECK(edge_transition_matrix(IntMatrix::of({{2}})) == IntMatrix::of({{1, 1}, {1, 1}}));
  CHECK(edge_transition_matrix(IntMatrix::of({{0, 1}, {1, 0}})) == IntMatrix::of({{0, 1}, {1, 0}}));
  CHECK(edge_transition_matrix(IntMatrix::of({{1, 1}, {1, 0}})) ==
        IntMatrix::of({{1, 1, 0}, {0, 0, 1}, {1, 1, 0}}));
}

TEST_CASE("splitting matrices") {
  auto sr = splitting_matrices(IntMatrix::of({{2}}));
  CHECK(sr.S == IntMatrix::of({{1}, {1}}));
  CHECK(sr.R == IntMatrix::of({{1, 1}}));
  sr = splitting_matrices(IntMatrix::of({{0, 1}, {1, 0}}));
  CHECK(sr.S == IntMatrix::of({{0, 1}, {1, 0}}));
  CHECK(sr.R == IntMatrix::of({{1, 0}, {0, 1}}));
}

TEST_CASE("bipartite block matrix") {
  IntMatrix z = bipartite_z(IntMatrix::of({{1, 1}}), IntMatrix::of({{1}, {1}}));
  CHECK(z == IntMatrix::of({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}));
  CHECK(z * z == IntMatrix::of({{2, 0, 0}, {0, 1, 1}, {0, 1, 1}}));
  CHECK(bipartite_z(IntMatrix::of({{1}}), IntMatrix::of({{1}})) == IntMatrix::of({{0, 1}, {1, 0}}));
  z = bipartite_z(IntMatrix::of({{1, 2}}), IntMatrix::of({{1}, {1}}));
  CHECK(z * z == IntMatrix::of({{3, 0, 0}, {0, 1, 2}, {0, 1, 2}}));
  CHECK_THROWS_AS(bipartite_z(IntMatrix::of({{1, 2}}), IntMatrix::of({{1, 1}})), ShapeError);
}

TEST_CASE("edge factorization") {
  auto f = edge_factorization(IntMatrix::of({{1, 1}}), IntMatrix::of({{1}, {1}}));
  CHECK(f.a == IntMatrix::of({{2}}));
  CHECK(f.a_edges == std::vector<EdgePair>{{0, 0}, {1, 1}});
  // b_edges store (c, d) of the path d then c.
  CHECK(f.b_edges == std::vector<EdgePair>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});

  f = edge_factorization(IntMatrix::of({{1}}), IntMatrix::of({{1}}));
  CHECK(f.a_edges.size() == 1);
  CHECK(f.b_edges.size() == 1);

  f = edge_factorization(IntMatrix::of({{2}}), IntMatrix::of({{1}}));
  CHECK(f.a_edges.size() == 2);
  CHECK(f.b_edges.size() == 2);

  // Every A-edge is composable and its endpoints match the path.
  IntMatrix c = IntMatrix::of({{1, 2, 0}, {0, 1, 1}});
  IntMatrix d = IntMatrix::of({{1, 1}, {2, 0}, {0, 1}});
  f = edge_factorization(c, d);
  auto ga = graph_from_matrix(c * d);
  REQUIRE(f.a_edges.size() == ga.edges.size());
  for (std::size_t i = 0; i < ga.edges.size(); ++i) {
    const Edge& ce = f.c_edges[f.a_edges[i].c];
    const Edge& de = f.d_edges[f.a_edges[i].d];
    CHECK(ce.target == de.source);
    CHECK(ce.source == ga.edges[i].source);
    CHECK(de.target == ga.edges[i].target);
  }
  CHECK(f.b_edges.size() == static_cast<std::size_t>((d * c).entry_sum().get_ui()));
}

TEST_CASE("dhat") {
  IntMatrix c = IntMatrix::of({{1, 1}}), d = IntMatrix::of({{1}, {1}});
  IntMatrix dh = dhat(c, d);
  CHECK(dh == IntMatrix::of({{1, 1, 0, 0}, {0, 0, 1, 1}}));
  IntMatrix ag = edge_transition_matrix(c * d), bg = edge_transition_matrix(d * c);
  CHECK(bg == IntMatrix::of({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}}));
  CHECK(ag * dh == IntMatrix::of({{1, 1, 1, 1}, {1, 1, 1, 1}}));
  CHECK(dh * bg == ag * dh);
  CHECK(dh * splitting_matrices(d * c).S == IntMatrix::of({{1, 1}, {1, 1}}));
  CHECK(splitting_matrices(c * d).S * c == IntMatrix::of({{1, 1}, {1, 1}}));
  CHECK(dhat(IntMatrix::of({{1}}), IntMatrix::of({{1}})) == IntMatrix::of({{1}}));
}

TEST_CASE("edge-level identities on random composable pairs") {
  InstanceGenerator gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto [c, d] = gen.composable_pair(4, 3);
    IntMatrix a = c * d, b = d * c;
    auto sa = splitting_matrices(a), sb = splitting_matrices(b);
    IntMatrix ag = edge_transition_matrix(a), bg = edge_transition_matrix(b);
    REQUIRE(sa.R * sa.S == a);
    REQUIRE(sa.S * sa.R == ag);
    REQUIRE(sb.R * sb.S == b);
    IntMatrix dh = dhat(c, d);
    REQUIRE(ag * dh == dh * bg);
    REQUIRE(dh * sb.S == sa.S * c);
    IntMatrix z = bipartite_z(c, d);
    IntMatrix zz = z * z;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.rows(); ++j) REQUIRE(zz(i, j) == a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.rows(); ++j) REQUIRE(zz(a.rows() + i, a.rows() + j) == b(i, j));

    // Row sums of A^G are the out-degrees of edge targets.
    auto g = graph_from_matrix(a);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      Integer sum = 0;
      for (const auto& x : ag.row(i)) sum += x;
      Integer out = 0;
      for (const auto& x : a.row(g.edges[i].target)) out += x;
      REQUIRE(sum == out);
    }
    // Every row of Dhat is a nonzero block.
    for (std::size_t i = 0; i < dh.rows(); ++i) {
      Integer sum = 0;
      for (const auto& x : dh.row(i)) sum += x;
      REQUIRE(sum > 0);
    }
  }
}

TEST_CASE("zero rows in the factors are allowed by the graph constructions") {
  IntMatrix c = IntMatrix::of({{1, 0}, {1, 0}});
  IntMatrix d = IntMatrix::of({{1, 1}, {0, 0}});
  IntMatrix dh = dhat(c, d);
  CHECK(edge_transition_matrix(c * d) * dh == dh * edge_transition_matrix(d * c));
}
