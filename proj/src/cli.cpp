#include "ssekit/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ssekit/errors.hpp"
#include "ssekit/factor.hpp"
#include "ssekit/graphs.hpp"
#include "ssekit/ksse.hpp"
#include "ssekit/ktheory.hpp"
#include "ssekit/lemmas.hpp"
#include "ssekit/matrix_io.hpp"

namespace ssekit::cli {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string emit_json(const Json& j) { return j.dump(2) + "\n"; }

IntMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

Json group_json(const CokerPresentation& g) {
  return Json{{"torsion", vector_to_json(g.torsion)},
              {"free_rank", g.free_rank},
              {"invariant_factors", vector_to_json(g.invariant_factors)}};
}

std::string group_text(const CokerPresentation& g) {
  return "torsion " + to_string(g.torsion) + "\nfree_rank " + std::to_string(g.free_rank) + "\n";
}

// --- ksse-style budgets ------------------------------------------------------

struct BudgetFlags {
  std::size_t depth = 1;
  std::optional<std::size_t> inner_max;
  std::optional<long> entry_max;
  std::optional<std::size_t> max_results;
  bool witnesses = false;

  void attach(CLI::App* cmd, bool with_witnesses) {
    cmd->add_option("--depth", depth, "Maximum chain length (default 1)");
    cmd->add_option("--inner-max", inner_max,
                    "Largest inner dimension per step (default max(rows, max entry), capped at 8)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--entry-max", entry_max, "Largest entry of C and D (default max entry of A)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-results", max_results, "Cap on factorizations per step (default unlimited)")
        ->check(CLI::PositiveNumber);
    if (with_witnesses) cmd->add_flag("--witnesses", witnesses, "Emit a witness chain per class");
  }

  SearchBudget resolve(const IntMatrix& a) const {
    SearchBudget b;
    const Integer max_a = a.max_entry();
    b.max_entry = entry_max ? Integer(*entry_max) : (max_a < 1 ? Integer(1) : max_a);
    if (inner_max) {
      b.max_inner_dim = *inner_max;
    } else {
      Integer guess = max_a > Integer(static_cast<unsigned long>(a.rows())) ? max_a : Integer(static_cast<unsigned long>(a.rows()));
      b.max_inner_dim = guess > 8 ? 8 : guess.get_ui();
    }
    b.max_results = max_results;
    return b;
  }
};

Json budget_json(const KsseResult& r) {
  return Json{{"depth", r.depth_limit},
              {"inner_max", r.step_budget.max_inner_dim},
              {"entry_max", integer_to_json(r.step_budget.max_entry)},
              {"max_results", r.step_budget.max_results ? Json(*r.step_budget.max_results) : Json(nullptr)}};
}

std::string budget_text(const KsseResult& r) {
  return "budget depth=" + std::to_string(r.depth_limit) +
         " inner_max=" + std::to_string(r.step_budget.max_inner_dim) +
         " entry_max=" + r.step_budget.max_entry.get_str() + " max_results=" +
         (r.step_budget.max_results ? std::to_string(*r.step_budget.max_results) : "unlimited") + "\n";
}

Json ksse_json(const KsseResult& r, bool witnesses) {
  Json classes = Json::array();
  for (const auto& [cls, w] : r.classes) {
    Json c{{"class", vector_to_json(cls.coords)}, {"depth", w.depth}};
    if (witnesses) c["witness"] = chain_to_json(w.chain);
    classes.push_back(std::move(c));
  }
  return Json{{"matrix", matrix_to_json(r.matrix)},
              {"group", group_json(r.base)},
              {"budget", budget_json(r)},
              {"class_count", r.classes.size()},
              {"classes", std::move(classes)},
              {"saturated", r.saturated},
              {"exhausted", r.exhausted},
              {"nodes_expanded", r.nodes_expanded},
              {"heuristic_dedup", r.heuristic_dedup}};
}

std::string ksse_text(const KsseResult& r, bool witnesses) {
  std::string s = group_text(r.base) + budget_text(r);
  s += "classes " + std::to_string(r.classes.size()) + "\n";
  for (const auto& [cls, w] : r.classes) {
    s += "class " + to_string(cls) + " depth " + std::to_string(w.depth) + "\n";
    if (witnesses) s += "witness " + chain_to_json(w.chain).dump() + "\n";
  }
  s += std::string("saturated ") + yes_no(r.saturated) + "\n";
  s += std::string("exhausted ") + yes_no(r.exhausted) + "\n";
  s += "nodes_expanded " + std::to_string(r.nodes_expanded) + "\n";
  if (r.heuristic_dedup) s += "heuristic_dedup yes\n";
  return s;
}

// --- subcommands -------------------------------------------------------------

int cmd_analyze(const std::string& path, bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path);
  const MatrixProfile p = profile(a);
  if (json) {
    out << emit_json(Json{{"rows", p.rows},
                          {"cols", p.cols},
                          {"nonnegative", p.is_nonnegative},
                          {"square", p.is_square},
                          {"irreducible", p.is_irreducible},
                          {"permutation", p.is_permutation},
                          {"period", p.period ? integer_to_json(*p.period) : Json(nullptr)},
                          {"total_edge_count", p.total_edge_count ? integer_to_json(*p.total_edge_count) : Json(nullptr)}});
    return kOk;
  }
  out << "rows " << p.rows << "\ncols " << p.cols << "\nnonnegative " << yes_no(p.is_nonnegative)
      << "\nsquare " << yes_no(p.is_square) << "\nirreducible " << yes_no(p.is_irreducible)
      << "\npermutation " << yes_no(p.is_permutation) << "\nperiod "
      << (p.period ? p.period->get_str() : "none") << "\nedges "
      << (p.total_edge_count ? p.total_edge_count->get_str() : "none") << "\n";
  return kOk;
}

int cmd_edge_graph(const std::string& path, bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path);
  const DirectedMultigraph g = graph_from_matrix(a);
  const IntMatrix ag = edge_transition_matrix(a);
  const SplittingMatrices sr = splitting_matrices(a);
  if (json) {
    Json edges = Json::array();
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      edges.push_back(Json{{"index", i + 1}, {"source", g.edges[i].source + 1}, {"target", g.edges[i].target + 1}});
    out << emit_json(Json{{"vertices", g.vertex_count},
                          {"edges", std::move(edges)},
                          {"edge_transition", matrix_to_json(ag)},
                          {"S", matrix_to_json(sr.S)},
                          {"R", matrix_to_json(sr.R)}});
    return kOk;
  }
  out << "vertices " << g.vertex_count << "\nedges " << g.edges.size() << "\n";
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    out << i + 1 << ": " << g.edges[i].source + 1 << " -> " << g.edges[i].target + 1 << "\n";
  out << "edge_transition\n" << format_matrix_text(ag) << "S\n" << format_matrix_text(sr.S) << "R\n"
      << format_matrix_text(sr.R);
  return kOk;
}

int cmd_factor(const std::string& path, std::optional<std::size_t> inner, std::optional<long> max_entry,
               std::optional<std::size_t> max_results, bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path);
  SearchBudget budget;
  const Integer max_a = a.max_entry();
  budget.max_entry = max_entry ? Integer(*max_entry) : (max_a < 1 ? Integer(1) : max_a);
  budget.max_results = max_results;
  const std::size_t m = inner.value_or(a.rows());
  budget.max_inner_dim = m;
  const auto found = enumerate_factorizations(a, m, budget);

  const std::string limit = max_results ? std::to_string(*max_results) : "unlimited";
  if (json) {
    Json list = Json::array();
    for (const auto& e : found)
      list.push_back(Json{{"C", matrix_to_json(e.C())},
                          {"D", matrix_to_json(e.D())},
                          {"B", matrix_to_json(e.B())},
                          {"canonical_B", matrix_to_json(canonical_permutation_form(e.B()).form)}});
    out << emit_json(Json{{"matrix", matrix_to_json(a)},
                          {"inner_dim", m},
                          {"max_entry", integer_to_json(budget.max_entry)},
                          {"max_results", max_results ? Json(*max_results) : Json(nullptr)},
                          {"count", found.size()},
                          {"factorizations", std::move(list)}});
    return kOk;
  }
  out << "inner_dim " << m << "\nmax_entry " << budget.max_entry.get_str() << "\nmax_results " << limit
      << "\ncount " << found.size() << "\n";
  if (found.empty()) out << "result none within budget\n";
  for (std::size_t k = 0; k < found.size(); ++k) {
    out << "factorization " << k + 1 << "\nC\n" << format_matrix_text(found[k].C()) << "D\n"
        << format_matrix_text(found[k].D()) << "B\n" << format_matrix_text(found[k].B())
        << "canonical_B\n" << format_matrix_text(canonical_permutation_form(found[k].B()).form);
  }
  return kOk;
}

int cmd_verify_chain(const std::string& path, bool json, std::ostream& out) {
  const SseChain chain = parse_chain(read_file(path));
  const ChainReport report = verify_chain(chain);
  if (json) {
    out << emit_json(Json{{"valid", report.valid},
                          {"steps", chain.length()},
                          {"transfer", matrix_to_json(report.transfer)}});
    return kOk;
  }
  out << "valid " << yes_no(report.valid) << "\nsteps " << chain.length() << "\ntransfer\n"
      << format_matrix_text(report.transfer);
  return kOk;
}

int cmd_k0(const std::string& path, bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path);
  const CokerPresentation g = k0_group(a);
  const Integer det = det_i_minus(a);
  const CokerClass unit = class_of(ones(a.rows()), g);
  if (json) {
    Json j = group_json(g);
    j["det_i_minus_a"] = integer_to_json(det);
    j["unit_class"] = vector_to_json(unit.coords);
    out << emit_json(j);
    return kOk;
  }
  out << group_text(g) << "det(I-A) " << det.get_str() << "\nunit_class " << to_string(unit) << "\n";
  return kOk;
}

int cmd_ksse(const std::string& path, const BudgetFlags& flags, bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path);
  const KsseResult r = ksse_enumerate(a, flags.depth, flags.resolve(a));
  out << (json ? emit_json(ksse_json(r, flags.witnesses)) : ksse_text(r, flags.witnesses));
  return kOk;
}

int cmd_full_units(const std::string& path, const BudgetFlags& flags, bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path);
  const FullUnitsReport r = full_units_check(a, flags.depth, flags.resolve(a));
  if (json) {
    Json j = ksse_json(r.ksse, flags.witnesses);
    j["verdict"] = to_string(r.verdict);
    out << emit_json(j);
  } else {
    out << ksse_text(r.ksse, flags.witnesses) << "verdict " << to_string(r.verdict) << "\n";
  }
  return r.verdict == FullUnitsVerdict::certified_full ? kOk : kNotYetFull;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, const BudgetFlags& flags,
                bool json, std::ostream& out) {
  const IntMatrix a = load_matrix(path_a);
  const IntMatrix b = load_matrix(path_b);
  // One budget for both sides, resolved from whichever matrix asks for more.
  SearchBudget ba = flags.resolve(a), bb = flags.resolve(b);
  SearchBudget budget{std::max(ba.max_inner_dim, bb.max_inner_dim),
                      ba.max_entry > bb.max_entry ? ba.max_entry : bb.max_entry, flags.max_results};
  const CompareReport r = compare_invariant_pairs(a, b, flags.depth, budget);
  if (json) {
    out << emit_json(Json{{"groups_isomorphic", r.groups_isomorphic},
                          {"det_i_minus_a", integer_to_json(r.det_a)},
                          {"det_i_minus_b", integer_to_json(r.det_b)},
                          {"det_equal", r.det_equal},
                          {"ksse_compatible", r.ksse_compatible},
                          {"a", ksse_json(r.ksse_a, flags.witnesses)},
                          {"b", ksse_json(r.ksse_b, flags.witnesses)},
                          {"verdict", to_string(r.verdict)}});
  } else {
    out << "[A]\n" << ksse_text(r.ksse_a, flags.witnesses) << "det(I-A) " << r.det_a.get_str() << "\n";
    out << "[B]\n" << ksse_text(r.ksse_b, flags.witnesses) << "det(I-B) " << r.det_b.get_str() << "\n";
    out << "groups_isomorphic " << yes_no(r.groups_isomorphic) << "\ndet_equal " << yes_no(r.det_equal)
        << "\nksse_compatible " << yes_no(r.ksse_compatible) << "\nverdict " << to_string(r.verdict) << "\n";
  }
  return r.verdict == CompareVerdict::distinguished ? kDistinguished : kOk;
}

int cmd_check_lemmas(const LemmaSuiteConfig& config, bool corrupt, bool json, std::ostream& out,
                     std::ostream& err) {
  LemmaHooks hooks;
  if (corrupt)
    hooks.corrupt_dhat = [](IntMatrix& dh) { dh(0, 0) = sgn(dh(0, 0)) == 0 ? 1 : 0; };
  const LemmaReport r = check_lemmas(config, hooks);
  const auto& names = lemma_families();
  if (json) {
    Json fam = Json::array();
    for (std::size_t f = 0; f < names.size(); ++f)
      fam.push_back(Json{{"family", names[f]}, {"passed", r.passed[f]}, {"failed", r.failed[f]}});
    Json j{{"trials", config.trials},
           {"dim_max", config.dim_max},
           {"entry_max", config.entry_max},
           {"seed", config.seed},
           {"families", std::move(fam)},
           {"ok", r.ok()}};
    if (r.first_failure)
      j["first_failure"] = Json{{"trial", r.first_failure->trial},
                                {"family", r.first_failure->family},
                                {"detail", r.first_failure->detail},
                                {"C", matrix_to_json(r.first_failure->C)},
                                {"D", matrix_to_json(r.first_failure->D)}};
    out << emit_json(j);
  } else {
    out << "config trials=" << config.trials << " dim_max=" << config.dim_max
        << " entry_max=" << config.entry_max << " seed=" << config.seed << "\n";
    for (std::size_t f = 0; f < names.size(); ++f)
      out << names[f] << " passed " << r.passed[f] << " failed " << r.failed[f] << "\n";
    if (r.first_failure) {
      const auto& ff = *r.first_failure;
      out << "first_failure trial " << ff.trial << " family " << ff.family << "\ndetail " << ff.detail
          << "\nC\n" << format_matrix_text(ff.C) << "D\n" << format_matrix_text(ff.D);
    }
    out << "result " << (r.ok() ? "pass" : "fail") << "\n";
  }
  if (!r.ok()) {
    err << "ERROR " << kVerification << ": lemma check failed at trial " << r.first_failure->trial
        << " (" << r.first_failure->family << "): " << r.first_failure->detail << "\n";
    return kVerification;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants and strong shift equivalence search for nonnegative integer matrices",
               "ssekit"};
  app.require_subcommand(1);
  bool json = false;
  std::string file, file_b;

  auto* analyze = app.add_subcommand("analyze", "Structural profile of a matrix");
  auto* edge = app.add_subcommand("edge-graph", "Edge graph, edge transition and splitting matrices");
  auto* factor = app.add_subcommand("factor", "Enumerate elementary factorizations A = CD");
  auto* chain = app.add_subcommand("verify-chain", "Verify a strong shift equivalence chain");
  auto* k0 = app.add_subcommand("k0", "coker(I - A^t), det(I - A) and the unit class");
  auto* ksse = app.add_subcommand("ksse", "Transfer classes reachable by chains within a budget");
  auto* full = app.add_subcommand("full-units", "Certify full units within a budget");
  auto* compare = app.add_subcommand("compare", "Necessary-condition conjugacy test for two matrices");
  auto* lemmas = app.add_subcommand("check-lemmas", "Randomized check of the edge-level identities");

  for (auto* cmd : {analyze, edge, factor, chain, k0, ksse, full, compare, lemmas})
    cmd->add_flag("--json", json, "Emit one JSON document");
  for (auto* cmd : {analyze, edge, factor, chain, k0, ksse, full, compare})
    cmd->add_option("file", file, "Input file")->required();
  compare->add_option("file_b", file_b, "Second matrix file")->required();

  std::optional<std::size_t> inner_dim, max_results;
  std::optional<long> max_entry;
  factor->add_option("--inner-dim", inner_dim, "Inner dimension m (default rows of A)")->check(CLI::PositiveNumber);
  factor->add_option("--max-entry", max_entry, "Largest entry of C and D (default max entry of A)")
      ->check(CLI::PositiveNumber);
  factor->add_option("--max-results", max_results, "Stop after this many results")->check(CLI::PositiveNumber);

  BudgetFlags budget;
  budget.attach(ksse, true);
  budget.attach(full, true);
  budget.attach(compare, false);

  LemmaSuiteConfig config;
  bool corrupt = false;
  lemmas->add_option("--trials", config.trials, "Number of random instances");
  lemmas->add_option("--dim-max", config.dim_max, "Largest dimension of C and D")->check(CLI::PositiveNumber);
  lemmas->add_option("--entry-max", config.entry_max, "Largest entry of C and D")->check(CLI::PositiveNumber);
  lemmas->add_option("--seed", config.seed, "Generator seed");
  lemmas->add_flag("--corrupt-dhat", corrupt, "Negative control: flip one entry of Dhat");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "ERROR " << kParse << ": " << e.what() << "\n";
    return kParse;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(file, json, out);
    if (edge->parsed()) return cmd_edge_graph(file, json, out);
    if (factor->parsed()) return cmd_factor(file, inner_dim, max_entry, max_results, json, out);
    if (chain->parsed()) return cmd_verify_chain(file, json, out);
    if (k0->parsed()) return cmd_k0(file, json, out);
    if (ksse->parsed()) return cmd_ksse(file, budget, json, out);
    if (full->parsed()) return cmd_full_units(file, budget, json, out);
    if (compare->parsed()) return cmd_compare(file, file_b, budget, json, out);
    if (lemmas->parsed()) return cmd_check_lemmas(config, corrupt, json, out, err);
  } catch (const Error& e) {
    err << "ERROR " << e.exit_code() << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "ERROR " << kInternal << ": " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace ssekit::cli
