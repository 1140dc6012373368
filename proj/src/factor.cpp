#include "ssekit/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

#include "ssekit/errors.hpp"
#include "ssekit/parallel.hpp"

namespace ssekit {

// ---------------------------------------------------------------------------
// Certificates

ElementaryEquiv ElementaryEquiv::verify(IntMatrix c, IntMatrix d, const std::optional<IntMatrix>& a,
                                        const std::optional<IntMatrix>& b) {
  if (c.cols() != d.rows() || d.cols() != c.rows())
    throw ShapeError("elementary equivalence: C is " + std::to_string(c.rows()) + "x" +
                     std::to_string(c.cols()) + " but D is " + std::to_string(d.rows()) + "x" +
                     std::to_string(d.cols()));
  if (!c.is_nonnegative() || !d.is_nonnegative())
    throw DomainError("elementary equivalence: C and D must be nonnegative");
  IntMatrix cd = c * d;
  IntMatrix dc = d * c;
  auto check = [](const IntMatrix& claimed, const IntMatrix& actual, const char* name,
                  const char* product) {
    if (claimed.rows() != actual.rows() || claimed.cols() != actual.cols())
      throw VerificationError(std::string(name) + " has shape " + std::to_string(claimed.rows()) +
                              "x" + std::to_string(claimed.cols()) + " but " + product + " is " +
                              std::to_string(actual.rows()) + "x" + std::to_string(actual.cols()));
    if (auto diff = first_difference(claimed, actual))
      throw VerificationError(std::string(name) + " != " + product + " at entry (" +
                              std::to_string(diff->first + 1) + "," +
                              std::to_string(diff->second + 1) + "): " +
                              claimed(diff->first, diff->second).get_str() + " vs " +
                              actual(diff->first, diff->second).get_str());
  };
  if (a) check(*a, cd, "A", "CD");
  if (b) check(*b, dc, "B", "DC");
  return ElementaryEquiv(std::move(cd), std::move(dc), std::move(c), std::move(d));
}

int compare(const ElementaryEquiv& x, const ElementaryEquiv& y) {
  if (int r = compare(x.C(), y.C())) return r;
  return compare(x.D(), y.D());
}

SseChain::SseChain(std::vector<IntMatrix> matrices, std::vector<ElementaryEquiv> steps)
    : matrices_(std::move(matrices)), steps_(std::move(steps)) {
  if (matrices_.size() != steps_.size() + 1)
    throw VerificationError("chain has " + std::to_string(matrices_.size()) + " matrices but " +
                            std::to_string(steps_.size()) + " steps");
  for (const auto& m : matrices_)
    if (!m.is_square() || !m.is_nonnegative())
      throw DomainError("chain matrices must be square and nonnegative");
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    if (!(steps_[k].A() == matrices_[k]))
      throw VerificationError("step " + std::to_string(k + 1) + ": CD does not equal matrix " +
                              std::to_string(k));
    if (!(steps_[k].B() == matrices_[k + 1]))
      throw VerificationError("step " + std::to_string(k + 1) + ": DC does not equal matrix " +
                              std::to_string(k + 1));
  }
}

SseChain SseChain::identity(IntMatrix a) { return SseChain({std::move(a)}, {}); }

SseChain SseChain::from_steps(const IntMatrix& start, std::vector<ElementaryEquiv> steps) {
  std::vector<IntMatrix> ms{start};
  for (const auto& s : steps) ms.push_back(s.B());
  return SseChain(std::move(ms), std::move(steps));
}

int compare(const SseChain& x, const SseChain& y) {
  if (x.length() != y.length()) return x.length() < y.length() ? -1 : 1;
  if (int r = compare(x.matrices().front(), y.matrices().front())) return r;
  for (std::size_t k = 0; k < x.length(); ++k)
    if (int r = compare(x.steps()[k], y.steps()[k])) return r;
  return 0;
}

ChainReport verify_chain(const SseChain& chain) {
  IntMatrix t = IntMatrix::identity(chain.matrices().front().rows());
  for (const auto& step : chain.steps()) t = t * step.D().transpose();
  return {true, std::move(t)};
}

// ---------------------------------------------------------------------------
// Factorization search

namespace {

constexpr std::int64_t kMaxSearchEntry = std::int64_t{1} << 20;
constexpr std::int64_t kUnreachable = std::int64_t{1} << 62;

struct SearchProblem {
  std::size_t n = 0;  // rows of A
  std::size_t m = 0;  // inner dimension
  std::vector<std::int64_t> a;  // row-major, saturated at kUnreachable
  std::vector<std::int64_t> row_max, col_max;
  std::vector<std::int64_t> row_sum, col_sum;
  std::int64_t entry_bound = 0;

  std::int64_t A(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

using Flat = std::vector<std::int64_t>;


class CSearch {
 public:
  CSearch(const SearchProblem& p, std::function<bool(const Flat&)> emit)
      : p_(p), emit_(std::move(emit)), c_(p.n * p.m, 0), zero_hits_(p.m, std::vector<int>(p.n, 0)) {}

  void run() { assign(0); }

 private:
  // Returns false when the consumer asked to stop.
  bool assign(std::size_t cell) {
    if (cell == p_.n * p_.m) {
      for (std::size_t k = 0; k < p_.m; ++k) {
        bool nonzero = false;
        for (std::size_t i = 0; i < p_.n; ++i) nonzero = nonzero || c_[i * p_.m + k] > 0;
        if (!nonzero) return true;
      }
      return emit_(c_);
    }
    const std::size_t i = cell / p_.m;
    const std::size_t k = cell % p_.m;
    // Every D row sums to at least 1, so row i of C sums to at most row i of A.
    std::int64_t used = 0;
    for (std::size_t k2 = 0; k2 < k; ++k2) used += c_[i * p_.m + k2];
    const std::int64_t ub = std::min({p_.entry_bound, p_.row_max[i], p_.row_sum[i] - used});
    for (std::int64_t v = 0; v <= ub; ++v) {
      c_[cell] = v;
      if (v == 1) mark(i, k, +1);
      if (viable(i, k) && (k + 1 < p_.m || row_complete_ok(i)))
        if (!assign(cell + 1)) {
          if (v >= 1) mark(i, k, -1);
          c_[cell] = 0;
          return false;
        }
    }
    if (ub >= 1) mark(i, k, -1);
    c_[cell] = 0;
    return true;
  }

  // zero_hits_[k][j] counts rows i with C(i,k) > 0 and A(i,j) = 0.
  void mark(std::size_t i, std::size_t k, int delta) {
    for (std::size_t j = 0; j < p_.n; ++j)
      if (p_.A(i, j) == 0) zero_hits_[k][j] += delta;
  }

  bool allowed(std::size_t k, std::size_t j) const { return zero_hits_[k][j] == 0; }

  // D row k must keep at least one admissible column.
  bool viable(std::size_t i, std::size_t k) const {
    if (c_[i * p_.m + k] == 0) return true;
    for (std::size_t j = 0; j < p_.n; ++j)
      if (allowed(k, j)) return true;
    return false;
  }

  // Every completed row must be nonzero and able to reach each of its targets.
  bool row_complete_ok(std::size_t last_row) const {
    for (std::size_t i = 0; i <= last_row; ++i) {
      bool nonzero = false;
      for (std::size_t k = 0; k < p_.m; ++k) nonzero = nonzero || c_[i * p_.m + k] > 0;
      if (!nonzero) return false;
      for (std::size_t j = 0; j < p_.n; ++j) {
        std::int64_t reach = 0;
        for (std::size_t k = 0; k < p_.m; ++k) {
          const std::int64_t cik = c_[i * p_.m + k];
          if (cik > 0 && allowed(k, j)) reach += cik * std::min(p_.entry_bound, p_.col_max[j]);
        }
        if (reach < p_.A(i, j)) return false;
      }
    }
    return true;
  }

  const SearchProblem& p_;
  std::function<bool(const Flat&)> emit_;
  Flat c_;
  std::vector<std::vector<int>> zero_hits_;
};

// All nonnegative d with C d = A[:, j], d_k <= bound, lexicographic order.
std::vector<Flat> solve_column(const SearchProblem& p, const Flat& c, std::size_t j) {
  const std::size_t n = p.n, m = p.m;
  Flat ub(m);
  for (std::size_t k = 0; k < m; ++k) {
    ub[k] = std::min(p.entry_bound, p.col_max[j]);
    for (std::size_t i = 0; i < n; ++i)
      if (c[i * m + k] > 0 && p.A(i, j) == 0) ub[k] = 0;
  }
  // remaining[k][i] = max contribution of d_k..d_{m-1} to row i.
  std::vector<Flat> remaining(m + 1, Flat(n, 0));
  for (std::size_t k = m; k-- > 0;)
    for (std::size_t i = 0; i < n; ++i) remaining[k][i] = remaining[k + 1][i] + c[i * m + k] * ub[k];

  std::vector<Flat> out;
  Flat d(m, 0), partial(n, 0);
  // Every C column sums to at least 1, so d sums to at most column j of A.
  std::int64_t d_sum = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m) {
      for (std::size_t i = 0; i < n; ++i)
        if (partial[i] != p.A(i, j)) return;
      out.push_back(d);
      return;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (partial[i] + remaining[k][i] < p.A(i, j)) return;
    std::int64_t hi = std::min(ub[k], p.col_sum[j] - d_sum);
    for (std::size_t i = 0; i < n; ++i)
      if (c[i * m + k] > 0) hi = std::min(hi, (p.A(i, j) - partial[i]) / c[i * m + k]);
    for (std::int64_t v = 0; v <= hi; ++v) {
      d[k] = v;
      d_sum += v;
      for (std::size_t i = 0; i < n; ++i) partial[i] += c[i * m + k] * v;
      rec(k + 1);
      for (std::size_t i = 0; i < n; ++i) partial[i] -= c[i * m + k] * v;
      d_sum -= v;
    }
    d[k] = 0;
  };
  rec(0);
  return out;
}

// D matrices (as column lists) for a fixed C, column 0 varying slowest.
std::vector<std::vector<const Flat*>> solve_d(const SearchProblem& p, const Flat& c,
                                              const std::vector<std::vector<Flat>>& columns,
                                              std::size_t limit) {
  const std::size_t n = p.n, m = p.m;
  // rows_possible[j][k]: some solution of columns j.. has d_k > 0.
  std::vector<std::vector<bool>> rows_possible(n + 1, std::vector<bool>(m, false));
  for (std::size_t j = n; j-- > 0;)
    for (std::size_t k = 0; k < m; ++k) {
      bool any = rows_possible[j + 1][k];
      for (const auto& sol : columns[j]) any = any || sol[k] > 0;
      rows_possible[j][k] = any;
    }
  (void)c;
  std::vector<std::vector<const Flat*>> out;
  std::vector<const Flat*> pick(n, nullptr);
  std::vector<int> row_hits(m, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t j) {
    for (std::size_t k = 0; k < m; ++k)
      if (row_hits[k] == 0 && !rows_possible[j][k]) return true;
    if (j == n) {
      out.push_back(pick);
      return out.size() < limit;
    }
    for (const auto& sol : columns[j]) {
      pick[j] = &sol;
      for (std::size_t k = 0; k < m; ++k) row_hits[k] += sol[k] > 0;
      bool go_on = rec(j + 1);
      for (std::size_t k = 0; k < m; ++k) row_hits[k] -= sol[k] > 0;
      if (!go_on) return false;
    }
    return true;
  };
  rec(0);
  return out;
}

std::vector<ElementaryEquiv> factor_for_c(const SearchProblem& p, const Flat& c, std::size_t limit) {
  std::vector<std::vector<Flat>> columns(p.n);
  for (std::size_t j = 0; j < p.n; ++j) {
    columns[j] = solve_column(p, c, j);
    if (columns[j].empty()) return {};
  }
  std::vector<ElementaryEquiv> out;
  IntMatrix cm(p.n, p.m);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t k = 0; k < p.m; ++k) cm(i, k) = static_cast<long>(c[i * p.m + k]);
  for (const auto& pick : solve_d(p, c, columns, limit)) {
    IntMatrix dm(p.m, p.n);
    for (std::size_t j = 0; j < p.n; ++j)
      for (std::size_t k = 0; k < p.m; ++k) dm(k, j) = static_cast<long>((*pick[j])[k]);
    out.push_back(ElementaryEquiv::verify(cm, std::move(dm)));
  }
  return out;
}

}  // namespace

std::vector<ElementaryEquiv> enumerate_factorizations(const IntMatrix& a, std::size_t inner_dim,
                                                      const SearchBudget& budget) {
  if (!a.is_square()) throw ShapeError("enumerate_factorizations: matrix is not square");
  if (!a.is_nonnegative()) throw DomainError("enumerate_factorizations: matrix has a negative entry");
  if (inner_dim == 0) throw DomainError("enumerate_factorizations: inner dimension must be >= 1");
  if (budget.max_entry < 1) throw DomainError("enumerate_factorizations: max entry must be >= 1");
  if (budget.max_entry > kMaxSearchEntry)
    throw DomainError("enumerate_factorizations: max entry " + budget.max_entry.get_str() +
                      " exceeds the supported search bound " + std::to_string(kMaxSearchEntry));
  if (budget.max_results && *budget.max_results == 0) return {};

  SearchProblem p;
  p.n = a.rows();
  p.m = inner_dim;
  p.entry_bound = budget.max_entry.get_si();
  p.a.resize(p.n * p.n);
  p.row_max.assign(p.n, 0);
  p.col_max.assign(p.n, 0);
  p.row_sum.assign(p.n, 0);
  p.col_sum.assign(p.n, 0);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      const Integer& x = a(i, j);
      std::int64_t v = x.fits_slong_p() && x < kUnreachable ? x.get_si() : kUnreachable;
      p.a[i * p.n + j] = v;
      p.row_max[i] = std::max(p.row_max[i], v);
      p.col_max[j] = std::max(p.col_max[j], v);
      p.row_sum[i] = std::min(kUnreachable, p.row_sum[i] + v);
      p.col_sum[j] = std::min(kUnreachable, p.col_sum[j] + v);
    }
  // Zero rows or columns of A cannot come from C, D without zero rows/columns.
  for (std::size_t i = 0; i < p.n; ++i)
    if (p.row_max[i] == 0 || p.col_max[i] == 0) return {};

  const std::size_t limit = budget.max_results.value_or(SIZE_MAX);
  std::vector<ElementaryEquiv> results;
  std::vector<Flat> batch;
  constexpr std::size_t kBatch = 256;

  auto flush = [&] {
    std::vector<std::vector<ElementaryEquiv>> found(batch.size());
    const std::size_t remaining = limit - results.size();
    parallel_for(batch.size(), [&](std::size_t b) { found[b] = factor_for_c(p, batch[b], remaining); });
    batch.clear();
    for (auto& f : found)
      for (auto& e : f) {
        if (results.size() == limit) return false;
        results.push_back(std::move(e));
      }
    return results.size() < limit;
  };

  CSearch search(p, [&](const Flat& c) {
    batch.push_back(c);
    return batch.size() < kBatch || flush();
  });
  search.run();
  if (!batch.empty() && results.size() < limit) flush();
  return results;
}

// ---------------------------------------------------------------------------
// Canonical form under simultaneous permutation

CanonicalForm canonical_permutation_form(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("canonical_permutation_form: matrix is not square");
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n > kExactCanonicalLimit) return {a, perm, true};

  std::vector<std::size_t> best = perm;
  // -1 if perm gives a smaller flattening than best.
  auto order = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (int c = cmp(a(x[i], x[j]), a(y[i], y[j]))) return c;
    return 0;
  };
  while (std::next_permutation(perm.begin(), perm.end()))
    if (order(perm, best) < 0) best = perm;

  IntMatrix form(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) form(i, j) = a(best[i], best[j]);
  return {std::move(form), std::move(best), false};
}

}  // namespace ssekit
