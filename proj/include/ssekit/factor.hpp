#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ssekit/intmat.hpp"

namespace ssekit {

/// Certificate that A = C*D and B = D*C with C, D nonnegative. Only
/// constructible through verification.
class ElementaryEquiv {
 public:
  /// Throws VerificationError naming the first differing entry when a
  /// supplied A or B does not match the recomputed product.
  static ElementaryEquiv verify(IntMatrix c, IntMatrix d, const std::optional<IntMatrix>& a = {},
                                const std::optional<IntMatrix>& b = {});

  const IntMatrix& A() const { return a_; }
  const IntMatrix& B() const { return b_; }
  const IntMatrix& C() const { return c_; }
  const IntMatrix& D() const { return d_; }

  /// Order used for reproducible witness selection: C, then D.
  friend int compare(const ElementaryEquiv& x, const ElementaryEquiv& y);

 private:
  ElementaryEquiv(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  IntMatrix a_, b_, c_, d_;
};

inline ElementaryEquiv verify_elementary(IntMatrix c, IntMatrix d,
                                         const std::optional<IntMatrix>& a = {},
                                         const std::optional<IntMatrix>& b = {}) {
  return ElementaryEquiv::verify(std::move(c), std::move(d), a, b);
}

/// A_0 ~ A_1 ~ ... ~ A_n through elementary steps; n = 0 is the identity chain.
class SseChain {
 public:
  /// Checks steps[k].A() == matrices[k] and steps[k].B() == matrices[k+1].
  SseChain(std::vector<IntMatrix> matrices, std::vector<ElementaryEquiv> steps);
  static SseChain identity(IntMatrix a);
  static SseChain from_steps(const IntMatrix& start, std::vector<ElementaryEquiv> steps);

  const std::vector<IntMatrix>& matrices() const { return matrices_; }
  const std::vector<ElementaryEquiv>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }

 private:
  std::vector<IntMatrix> matrices_;
  std::vector<ElementaryEquiv> steps_;
};

/// Shorter first, then steps compared in order.
int compare(const SseChain& x, const SseChain& y);

struct ChainReport {
  bool valid = false;
  IntMatrix transfer;  // D_1^t D_2^t ... D_n^t, N_0 x N_n
};

ChainReport verify_chain(const SseChain& chain);

struct SearchBudget {
  std::size_t max_inner_dim = 1;
  Integer max_entry = 1;
  std::optional<std::size_t> max_results;  // unlimited when empty
};

/// All (C, D) with C: N x m, D: m x N, entries in [0, budget.max_entry], no
/// zero row or column in C or D, and C*D = A. Ordered lexicographically by C
/// (row-major) and then by D column by column (column-major), truncated at
/// budget.max_results. An empty result means none within the budget.
std::vector<ElementaryEquiv> enumerate_factorizations(const IntMatrix& a, std::size_t inner_dim,
                                                      const SearchBudget& budget);

struct CanonicalForm {
  IntMatrix form;
  /// form(i,j) = A(perm[i], perm[j]); the first permutation (in
  /// lexicographic order) attaining the minimum.
  std::vector<std::size_t> perm;
  /// True when the matrix exceeds the exact limit and was returned unchanged.
  bool heuristic = false;
};

inline constexpr std::size_t kExactCanonicalLimit = 8;

/// Least row-major flattening of P^t A P over permutations P (exact up to
/// 8x8; identity above).
CanonicalForm canonical_permutation_form(const IntMatrix& a);

}  // namespace ssekit
