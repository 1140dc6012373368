#include "ssekit/graphs.hpp"

#include <map>
#include <string>

#include "ssekit/errors.hpp"

namespace ssekit {

namespace {

// Keeps graph constructions inside memory reach; entries are arbitrary precision.
constexpr unsigned long kMaxEdges = 5'000'000;

std::size_t edge_count(const IntMatrix& m) {
  if (!m.is_nonnegative()) throw DomainError("graph of a matrix with a negative entry");
  Integer total = m.entry_sum();
  if (total > kMaxEdges)
    throw DomainError("graph has " + total.get_str() + " edges, above the supported " +
                      std::to_string(kMaxEdges));
  return total.get_ui();
}

IntMatrix check_identity(const IntMatrix& lhs, const IntMatrix& rhs, const char* what) {
  if (auto diff = first_difference(lhs, rhs))
    throw InvariantViolation(std::string(what) + " fails at entry (" +
                             std::to_string(diff->first + 1) + "," +
                             std::to_string(diff->second + 1) + ")");
  return lhs;
}

// Groups composable paths x y (x from `first`, y from `second`) by their
// endpoints, preserving (x, y) order inside each group.
std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>
group_paths(const std::vector<Edge>& first, const std::vector<Edge>& second,
            std::size_t middle_count) {
  std::vector<std::vector<std::size_t>> leaving(middle_count);
  for (std::size_t y = 0; y < second.size(); ++y) leaving[second[y].source].push_back(y);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>
      groups;
  for (std::size_t x = 0; x < first.size(); ++x)
    for (std::size_t y : leaving[first[x].target])
      groups[{first[x].source, second[y].target}].emplace_back(x, y);
  return groups;
}

}  // namespace

std::vector<Edge> bipartite_edges(const IntMatrix& m) {
  std::vector<Edge> edges;
  edges.reserve(edge_count(m));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (unsigned long k = 0; k < m(i, j).get_ui(); ++k) edges.push_back({i, j});
  return edges;
}

DirectedMultigraph graph_from_matrix(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("graph_from_matrix: matrix is not square");
  if (!a.is_nonnegative()) throw DomainError("graph_from_matrix: matrix has a negative entry");
  if (a.is_zero()) throw DomainError("graph_from_matrix: zero matrix has no edges");
  return {a.rows(), bipartite_edges(a)};
}

IntMatrix edge_transition_matrix(const IntMatrix& a) {
  const auto g = graph_from_matrix(a);
  const std::size_t n = g.edges.size();
  IntMatrix ag(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.edges[i].target == g.edges[j].source) ag(i, j) = 1;
  return ag;
}

SplittingMatrices splitting_matrices(const IntMatrix& a) {
  const auto g = graph_from_matrix(a);
  const std::size_t n = g.edges.size();
  IntMatrix s(n, g.vertex_count);
  IntMatrix r(g.vertex_count, n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, g.edges[i].target) = 1;
    r(g.edges[i].source, i) = 1;
  }
  check_identity(r * s, a, "R_A S_A = A");
  check_identity(s * r, edge_transition_matrix(a), "S_A R_A = A^G");
  return {std::move(s), std::move(r)};
}

IntMatrix bipartite_z(const IntMatrix& c, const IntMatrix& d) {
  if (c.cols() != d.rows() || d.cols() != c.rows())
    throw ShapeError("bipartite_z: C is " + std::to_string(c.rows()) + "x" +
                     std::to_string(c.cols()) + " but D is " + std::to_string(d.rows()) + "x" +
                     std::to_string(d.cols()));
  const std::size_t n = c.rows();
  const std::size_t m = c.cols();
  IntMatrix z(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) z(i, n + j) = c(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) z(n + i, j) = d(i, j);

  const IntMatrix cd = c * d;
  const IntMatrix dc = d * c;
  IntMatrix expected(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) expected(i, j) = cd(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) expected(n + i, n + j) = dc(i, j);
  check_identity(z * z, expected, "Z^2 = diag(CD, DC)");
  return z;
}

EdgeFactorization edge_factorization(const IntMatrix& c, const IntMatrix& d) {
  if (c.cols() != d.rows() || d.cols() != c.rows())
    throw ShapeError("edge_factorization: shapes of C and D do not compose both ways");
  EdgeFactorization f{c * d, d * c, bipartite_edges(c), bipartite_edges(d), {}, {}};

  for (const auto& [ends, paths] : group_paths(f.c_edges, f.d_edges, c.cols()))
    for (const auto& [ci, di] : paths) f.a_edges.push_back({ci, di});
  for (const auto& [ends, paths] : group_paths(f.d_edges, f.c_edges, c.rows()))
    for (const auto& [di, ci] : paths) f.b_edges.push_back({ci, di});

  if (f.a_edges.size() != edge_count(f.a) || f.b_edges.size() != edge_count(f.b))
    throw InvariantViolation("edge_factorization: path counts do not match the edge counts of CD, DC");
  return f;
}

IntMatrix dhat_from(const EdgeFactorization& f) {
  IntMatrix dh(f.a_edges.size(), f.b_edges.size());
  for (std::size_t i = 0; i < f.a_edges.size(); ++i)
    for (std::size_t l = 0; l < f.b_edges.size(); ++l)
      if (f.a_edges[i].d == f.b_edges[l].d) dh(i, l) = 1;
  return dh;
}

IntMatrix dhat(const IntMatrix& c, const IntMatrix& d) {
  const auto f = edge_factorization(c, d);
  IntMatrix dh = dhat_from(f);
  check_identity(edge_transition_matrix(f.a) * dh, dh * edge_transition_matrix(f.b),
                 "A^G Dhat = Dhat B^G");
  return dh;
}

}  // namespace ssekit
