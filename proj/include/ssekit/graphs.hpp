#pragma once

#include <cstddef>
#include <vector>

#include "ssekit/intmat.hpp"

namespace ssekit {

struct Edge {
  std::size_t source;
  std::size_t target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Multigraph of a nonnegative matrix: A(i,j) parallel edges i -> j.
/// Edges are sorted by (source, target), parallel copies adjacent; vertices
/// are 0-based.
struct DirectedMultigraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
};

/// Edges of a rectangular nonnegative matrix viewed as a bipartite graph
/// from row vertices to column vertices, in the same canonical order.
std::vector<Edge> bipartite_edges(const IntMatrix& m);

DirectedMultigraph graph_from_matrix(const IntMatrix& a);

/// 0/1 matrix over edges: entry (i,j) = 1 iff edge i ends where edge j starts.
IntMatrix edge_transition_matrix(const IntMatrix& a);

struct SplittingMatrices {
  IntMatrix S;  // edges x vertices, S(i,j) = 1 iff edge i ends at vertex j
  IntMatrix R;  // vertices x edges, R(j,i) = 1 iff edge i starts at vertex j
};

/// Returns (S, R) with R*S = A and S*R = edge_transition_matrix(A); both
/// identities are checked before returning.
SplittingMatrices splitting_matrices(const IntMatrix& a);

/// Z = [[0, C], [D, 0]]; checks Z^2 = diag(CD, DC).
IntMatrix bipartite_z(const IntMatrix& c, const IntMatrix& d);

/// One composable pair of a C-edge and a D-edge (indices into
/// bipartite_edges(C) and bipartite_edges(D)).
struct EdgePair {
  std::size_t c;
  std::size_t d;

  friend bool operator==(const EdgePair&, const EdgePair&) = default;
};

/// Identification of the edges of A = CD with composable (c, d) paths and of
/// the edges of B = DC with composable (d, c) paths. a_edges[i] is the path
/// of the i-th canonical edge of G_A: paths are grouped by their endpoints in
/// canonical edge order and ordered by (c, d) within a group of parallel
/// edges. b_edges likewise, with entries stored as (c, d) of the path d c.
struct EdgeFactorization {
  IntMatrix a;
  IntMatrix b;
  std::vector<Edge> c_edges;
  std::vector<Edge> d_edges;
  std::vector<EdgePair> a_edges;
  std::vector<EdgePair> b_edges;
};

EdgeFactorization edge_factorization(const IntMatrix& c, const IntMatrix& d);

/// Dhat(i,l) = 1 iff A-edge i and B-edge l share their D-edge. Checks
/// A^G * Dhat = Dhat * B^G before returning.
IntMatrix dhat(const IntMatrix& c, const IntMatrix& d);

/// Dhat from an existing edge factorization, without the self-check.
IntMatrix dhat_from(const EdgeFactorization& f);

}  // namespace ssekit
