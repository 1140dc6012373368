#include "ssekit/ksse.hpp"

#include <memory>
#include <set>

#include "ssekit/errors.hpp"
#include "ssekit/parallel.hpp"

namespace ssekit {

namespace {

struct Link {
  std::shared_ptr<const Link> parent;
  ElementaryEquiv step;
};

struct Node {
  IntMatrix matrix;
  std::vector<CokerClass> columns;  // classes of T e_j in coker(I - A_0^t)
  std::shared_ptr<const Link> path;
  std::size_t depth = 0;
  bool heuristic = false;
};

std::vector<ElementaryEquiv> steps_of(const std::shared_ptr<const Link>& path) {
  std::vector<ElementaryEquiv> steps;
  for (auto l = path; l; l = l->parent) steps.push_back(l->step);
  return {steps.rbegin(), steps.rend()};
}

// Same-length paths from the same start: compare step by step.
int compare_paths(const std::shared_ptr<const Link>& x, const std::shared_ptr<const Link>& y) {
  auto sx = steps_of(x), sy = steps_of(y);
  for (std::size_t k = 0; k < std::min(sx.size(), sy.size()); ++k)
    if (int r = compare(sx[k], sy[k])) return r;
  return sx.size() == sy.size() ? 0 : (sx.size() < sy.size() ? -1 : 1);
}

std::string node_key(const Node& node, bool& heuristic) {
  const CanonicalForm cf = canonical_permutation_form(node.matrix);
  heuristic = cf.heuristic;
  std::string key = std::to_string(cf.form.rows());
  for (const auto& x : cf.form.entries()) key += " " + x.get_str();
  key += " |";
  for (std::size_t p : cf.perm) key += " " + to_string(node.columns[p]);
  return key;
}

CokerClass transfer_class(const Node& node, const CokerPresentation& base) {
  return combine(node.columns, ones(node.columns.size()), base);
}

void require_standing_hypotheses(const IntMatrix& a) {
  if (!a.is_square()) throw DomainError("matrix is not square");
  if (!a.is_nonnegative()) throw DomainError("matrix has a negative entry");
  if (!is_irreducible(a)) throw DomainError("matrix is not irreducible");
  if (is_permutation_matrix(a)) throw DomainError("matrix is a permutation matrix");
}

}  // namespace

KsseResult ksse_enumerate(const IntMatrix& a, std::size_t depth, const SearchBudget& step_budget,
                          const KsseOptions& options) {
  require_standing_hypotheses(a);
  KsseResult result{a, k0_group(a), {}, depth, step_budget, false, false, 0, false};
  const CokerPresentation& base = result.base;

  Node root{a, {}, nullptr, 0, false};
  for (std::size_t j = 0; j < a.rows(); ++j) {
    IntVector e(a.rows(), Integer(0));
    e[j] = 1;
    root.columns.push_back(class_of(e, base));
  }
  result.classes.emplace(transfer_class(root, base), KsseWitness{SseChain::identity(a), 0});

  std::set<std::string> seen;
  bool heuristic = false;
  seen.insert(node_key(root, heuristic));
  result.heuristic_dedup = heuristic;

  auto check_saturated = [&] {
    result.saturated = base.is_finite() && Integer(static_cast<unsigned long>(result.classes.size())) == base.order();
  };
  check_saturated();

  std::vector<Node> frontier{root};
  for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
    if (result.saturated && options.stop_when_saturated) break;
    std::vector<std::vector<Node>> children(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t f) {
      const Node& parent = frontier[f];
      for (std::size_t m = 1; m <= step_budget.max_inner_dim; ++m) {
        for (auto& step : enumerate_factorizations(parent.matrix, m, step_budget)) {
          Node child{step.B(), {}, nullptr, d, false};
          // T' = T D^t: column j of T' is sum_k D(j,k) (T e_k).
          for (std::size_t j = 0; j < step.D().rows(); ++j)
            child.columns.push_back(combine(parent.columns, step.D().row(j), base));
          child.path = std::make_shared<const Link>(Link{parent.path, std::move(step)});
          children[f].push_back(std::move(child));
        }
      }
    });
    result.nodes_expanded += frontier.size();

    std::map<std::string, Node> layer;
    for (auto& group : children)
      for (auto& child : group) {
        bool h = false;
        std::string key = node_key(child, h);
        result.heuristic_dedup = result.heuristic_dedup || h;
        if (seen.count(key)) continue;
        auto it = layer.find(key);
        if (it == layer.end())
          layer.emplace(std::move(key), std::move(child));
        else if (compare_paths(child.path, it->second.path) < 0)
          it->second = std::move(child);
      }

    frontier.clear();
    for (auto& [key, node] : layer) {
      seen.insert(key);
      CokerClass cls = transfer_class(node, base);
      auto it = result.classes.find(cls);
      if (it == result.classes.end()) {
        result.classes.emplace(std::move(cls), KsseWitness{SseChain::from_steps(a, steps_of(node.path)), d});
      } else if (it->second.depth == d) {
        SseChain candidate = SseChain::from_steps(a, steps_of(node.path));
        if (compare(candidate, it->second.chain) < 0) it->second.chain = std::move(candidate);
      }
      frontier.push_back(std::move(node));
    }
    check_saturated();
  }
  result.exhausted = !result.saturated && frontier.empty();
  return result;
}

FullUnitsReport full_units_check(const IntMatrix& a, std::size_t depth, const SearchBudget& step_budget) {
  KsseResult r = ksse_enumerate(a, depth, step_budget);
  const auto verdict =
      r.saturated ? FullUnitsVerdict::certified_full : FullUnitsVerdict::not_yet_full_within_budget;
  return {verdict, std::move(r)};
}

CompareReport compare_invariant_pairs(const IntMatrix& a, const IntMatrix& b, std::size_t depth,
                                      const SearchBudget& step_budget) {
  KsseResult ra = ksse_enumerate(a, depth, step_budget);
  KsseResult rb = ksse_enumerate(b, depth, step_budget);
  CompareReport report{CompareVerdict::compatible_within_budget,
                       groups_isomorphic(ra.base, rb.base),
                       false,
                       det_i_minus(a),
                       det_i_minus(b),
                       true,
                       std::move(ra),
                       std::move(rb)};
  report.det_equal = report.det_a == report.det_b;
  if (report.ksse_a.saturated && report.ksse_b.saturated)
    report.ksse_compatible = report.ksse_a.classes.size() == report.ksse_b.classes.size();
  if (!report.groups_isomorphic || !report.det_equal || !report.ksse_compatible)
    report.verdict = CompareVerdict::distinguished;
  return report;
}

std::string to_string(FullUnitsVerdict v) {
  return v == FullUnitsVerdict::certified_full ? "certified_full" : "not_yet_full_within_budget";
}

std::string to_string(CompareVerdict v) {
  return v == CompareVerdict::distinguished ? "distinguished" : "compatible_within_budget";
}

}  // namespace ssekit
