#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ssekit/intmat.hpp"

namespace ssekit {

struct LemmaSuiteConfig {
  std::size_t trials = 200;
  std::size_t dim_max = 4;
  long entry_max = 3;
  std::uint64_t seed = 42;
};

/// Test hooks for negative controls.
struct LemmaHooks {
  std::function<void(IntMatrix&)> corrupt_dhat;
};

/// Identity families checked on every instance, in report order.
inline const std::vector<std::string>& lemma_families() {
  static const std::vector<std::string> names{
      "edge-intertwining",        // A^G Dhat = Dhat B^G
      "dhat-splitting",           // Dhat S_B = S_A C
      "splitting-factorization",  // R S = matrix, S R = edge matrix (A and B)
      "unit-class",               // S^t 1 = 1 mod (I - A^t) (A and B)
      "cokernel-square",          // Phi(S_B^t) Phi(Dhat^t) = Phi(C^t) Phi(S_A^t)
      "sylvester-determinant",    // det(I - A) = det(I - B)
  };
  return names;
}

struct LemmaFailure {
  std::size_t trial = 0;  // 1-based
  std::string family;
  std::string detail;
  IntMatrix C;
  IntMatrix D;
};

struct LemmaReport {
  LemmaSuiteConfig config;
  std::vector<std::size_t> passed;  // per family, same order as lemma_families()
  std::vector<std::size_t> failed;
  std::optional<LemmaFailure> first_failure;

  bool ok() const { return !first_failure.has_value(); }
};

/// Seeded instance source: std::mt19937_64 with unbiased bounded draws by
/// rejection, so a seed reproduces the same instances on every platform.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// C (N x M), D (M x N) with N, M uniform in [1, dim_max], entries uniform
  /// in [0, entry_max], redrawn until neither has a zero row or column.
  std::pair<IntMatrix, IntMatrix> composable_pair(std::size_t dim_max, long entry_max);

 private:
  std::mt19937_64 rng_;
};

bool has_zero_row_or_column(const IntMatrix& m);

LemmaReport check_lemmas(const LemmaSuiteConfig& config, const LemmaHooks& hooks = {});

}  // namespace ssekit
