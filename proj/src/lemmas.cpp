#include "ssekit/lemmas.hpp"

#include <limits>

#include "ssekit/errors.hpp"
#include "ssekit/graphs.hpp"
#include "ssekit/ktheory.hpp"
#include "ssekit/parallel.hpp"

namespace ssekit {

std::uint64_t InstanceGenerator::below(std::uint64_t n) {
  if (n == 0) throw DomainError("InstanceGenerator::below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;
  for (;;) {
    std::uint64_t x = rng_();
    if (x >= threshold) return x % n;
  }
}

bool has_zero_row_or_column(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols() && zero; ++j) zero = sgn(m(i, j)) == 0;
    if (zero) return true;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) zero = sgn(m(i, j)) == 0;
    if (zero) return true;
  }
  return false;
}

std::pair<IntMatrix, IntMatrix> InstanceGenerator::composable_pair(std::size_t dim_max, long entry_max) {
  if (dim_max < 1 || entry_max < 1) throw DomainError("lemma suite needs dim_max >= 1 and entry_max >= 1");
  for (;;) {
    const std::size_t n = 1 + below(dim_max);
    const std::size_t m = 1 + below(dim_max);
    IntMatrix c(n, m), d(m, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) c(i, j) = static_cast<long>(below(entry_max + 1));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = static_cast<long>(below(entry_max + 1));
    if (!has_zero_row_or_column(c) && !has_zero_row_or_column(d)) return {std::move(c), std::move(d)};
  }
}

namespace {

// Per-family outcome for one instance: empty string = pass, else the reason.
using Outcome = std::vector<std::string>;

std::string mismatch(const IntMatrix& lhs, const IntMatrix& rhs, const std::string& what) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return what + ": shape mismatch";
  if (auto diff = first_difference(lhs, rhs))
    return what + ": differs at (" + std::to_string(diff->first + 1) + "," +
           std::to_string(diff->second + 1) + ")";
  return {};
}

template <typename F>
std::string guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

std::string check_unit_class(const IntMatrix& s, const CokerPresentation& k) {
  CokerClass image = class_of(s.transpose() * ones(s.rows()), k);
  CokerClass unit = class_of(ones(s.cols()), k);
  if (!(image == unit)) return "S^t 1 has class " + to_string(image) + ", expected " + to_string(unit);
  return {};
}

Outcome check_instance(const IntMatrix& c, const IntMatrix& d, const LemmaHooks& hooks) {
  Outcome out(lemma_families().size());
  const IntMatrix a = c * d;
  const IntMatrix b = d * c;

  std::optional<IntMatrix> dh, ag, bg;
  std::optional<SplittingMatrices> sa, sb;
  std::string setup = guarded([&]() -> std::string {
    dh = dhat_from(edge_factorization(c, d));
    if (hooks.corrupt_dhat) hooks.corrupt_dhat(*dh);
    ag = edge_transition_matrix(a);
    bg = edge_transition_matrix(b);
    return {};
  });
  if (!setup.empty()) {
    std::fill(out.begin(), out.end(), setup);
    return out;
  }

  out[0] = guarded([&] { return mismatch(*ag * *dh, *dh * *bg, "A^G Dhat vs Dhat B^G"); });
  out[2] = guarded([&]() -> std::string {
    sa = splitting_matrices(a);
    sb = splitting_matrices(b);
    for (auto r : {mismatch(sa->R * sa->S, a, "R_A S_A vs A"), mismatch(sa->S * sa->R, *ag, "S_A R_A vs A^G"),
                   mismatch(sb->R * sb->S, b, "R_B S_B vs B"), mismatch(sb->S * sb->R, *bg, "S_B R_B vs B^G")})
      if (!r.empty()) return r;
    return {};
  });
  if (!sa || !sb) {
    // Families below need the splitting matrices.
    out[1] = out[3] = out[4] = out[2];
  } else {
    out[1] = guarded([&] { return mismatch(*dh * sb->S, sa->S * c, "Dhat S_B vs S_A C"); });
    out[3] = guarded([&]() -> std::string {
      const auto ka = k0_group(a);
      const auto kb = k0_group(b);
      std::string r = check_unit_class(sa->S, ka);
      return r.empty() ? check_unit_class(sb->S, kb) : r;
    });
    out[4] = guarded([&]() -> std::string {
      const auto ka = k0_group(a);
      const auto kb = k0_group(b);
      const auto kag = k0_group(*ag);
      const auto kbg = k0_group(*bg);
      const auto phi_dhat = induced_map(dh->transpose(), kag, kbg);
      const auto phi_sb = induced_map(sb->S.transpose(), kbg, kb);
      const auto phi_c = induced_map(c.transpose(), ka, kb);
      const auto phi_sa = induced_map(sa->S.transpose(), kag, ka);
      const IntMatrix top = phi_sb.matrix() * phi_dhat.matrix();
      const IntMatrix bottom = phi_c.matrix() * phi_sa.matrix();
      for (std::size_t i = 0; i < top.cols(); ++i) {
        CokerClass x = class_of(top.column(i), kb);
        CokerClass y = class_of(bottom.column(i), kb);
        if (!(x == y))
          return "basis class e_" + std::to_string(i + 1) + " maps to " + to_string(x) + " vs " +
                 to_string(y);
      }
      return {};
    });
  }
  out[5] = guarded([&]() -> std::string {
    Integer da = det_i_minus(a), db = det_i_minus(b);
    if (da != db) return "det(I-A) = " + da.get_str() + " but det(I-B) = " + db.get_str();
    return {};
  });
  return out;
}

}  // namespace

LemmaReport check_lemmas(const LemmaSuiteConfig& config, const LemmaHooks& hooks) {
  const std::size_t families = lemma_families().size();
  LemmaReport report{config, std::vector<std::size_t>(families, 0), std::vector<std::size_t>(families, 0), {}};

  InstanceGenerator gen(config.seed);
  std::vector<std::pair<IntMatrix, IntMatrix>> instances;
  instances.reserve(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) instances.push_back(gen.composable_pair(config.dim_max, config.entry_max));

  std::vector<Outcome> outcomes(config.trials);
  parallel_for(config.trials, [&](std::size_t t) {
    outcomes[t] = check_instance(instances[t].first, instances[t].second, hooks);
  });

  for (std::size_t t = 0; t < config.trials; ++t)
    for (std::size_t f = 0; f < families; ++f) {
      if (outcomes[t][f].empty()) {
        ++report.passed[f];
        continue;
      }
      ++report.failed[f];
      if (!report.first_failure)
        report.first_failure = LemmaFailure{t + 1, lemma_families()[f], outcomes[t][f],
                                            instances[t].first, instances[t].second};
    }
  return report;
}

}  // namespace ssekit
