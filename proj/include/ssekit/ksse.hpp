#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssekit/factor.hpp"
#include "ssekit/ktheory.hpp"

namespace ssekit {

struct KsseWitness {
  SseChain chain;
  std::size_t depth = 0;  // chain length, the first depth at which the class appeared
};

/// Classes [D_1^t ... D_n^t 1] reached by strong shift equivalence chains
/// from A within a depth and per-step budget, each with its shortest
/// witness chain (ties broken by chain order).
struct KsseResult {
  IntMatrix matrix;
  CokerPresentation base;
  std::map<CokerClass, KsseWitness> classes;
  std::size_t depth_limit = 0;
  SearchBudget step_budget;
  bool saturated = false;  // classes cover the whole (finite) group
  bool exhausted = false;  // no unexplored node left inside the per-step budget
  std::size_t nodes_expanded = 0;
  bool heuristic_dedup = false;  // some node exceeded the exact canonical-form size
};

struct KsseOptions {
  /// Stop after the first layer that saturates the group. Witness depths are
  /// unaffected; disabling it only spends more time.
  bool stop_when_saturated = true;
};

/// Breadth-first search over chains. Nodes are keyed by the canonical form
/// of the current matrix together with the classes of the columns of the
/// accumulated transfer matrix, permuted alongside the matrix; nodes with
/// equal keys reach the same future classes, so only the first is expanded.
/// Child matrices have dimension at most step_budget.max_inner_dim.
KsseResult ksse_enumerate(const IntMatrix& a, std::size_t depth, const SearchBudget& step_budget,
                          const KsseOptions& options = {});

enum class FullUnitsVerdict { certified_full, not_yet_full_within_budget };

struct FullUnitsReport {
  FullUnitsVerdict verdict;
  KsseResult ksse;
};

FullUnitsReport full_units_check(const IntMatrix& a, std::size_t depth, const SearchBudget& step_budget);

enum class CompareVerdict { distinguished, compatible_within_budget };

struct CompareReport {
  CompareVerdict verdict;
  bool groups_isomorphic = false;
  bool det_equal = false;
  Integer det_a, det_b;
  /// Budget-limited class sets only bound the invariant from below, so this
  /// is true unless both sides saturate groups of different size.
  bool ksse_compatible = true;
  KsseResult ksse_a;
  KsseResult ksse_b;
};

/// Necessary-condition test for conjugacy. `distinguished` is a proof of
/// non-conjugacy; `compatible_within_budget` proves nothing.
CompareReport compare_invariant_pairs(const IntMatrix& a, const IntMatrix& b, std::size_t depth,
                                      const SearchBudget& step_budget);

std::string to_string(FullUnitsVerdict v);
std::string to_string(CompareVerdict v);

}  // namespace ssekit
