#include "ssekit/intmat.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "ssekit/errors.hpp"

namespace ssekit {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : IntMatrix(rows, cols, {}) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
  if (data_.empty()) data_.assign(rows * cols, Integer(0));
  if (data_.size() != rows * cols)
    throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
}

IntMatrix IntMatrix::of(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<Integer> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged matrix literal");
    for (long x : row) data.emplace_back(x);
  }
  return IntMatrix(r, c, std::move(data));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::column_vector(const IntVector& v) { return IntMatrix(v.size(), 1, v); }

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return c;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) >= 0; });
}

Integer IntMatrix::max_entry() const { return *std::max_element(data_.begin(), data_.end()); }

Integer IntMatrix::entry_sum() const {
  Integer s = 0;
  for (const auto& x : data_) s += x;
  return s;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

static void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "add");
  std::vector<Integer> d(a.entries());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += b.entries()[k];
  return IntMatrix(a.rows(), a.cols(), std::move(d));
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_same_shape(a, b, "subtract");
  std::vector<Integer> d(a.entries());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.entries()[k];
  return IntMatrix(a.rows(), a.cols(), std::move(d));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + " differ");
  IntMatrix p(a.rows(), b.cols());
  // i-k-j order so zero entries of `a` (common in 0/1 incidence matrices) are skipped.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Integer& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        mpz_addmul(p(i, j).get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
      }
    }
  }
  return p;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size())
    throw ShapeError("matrix-vector: length " + std::to_string(v.size()) + " does not match " +
                     std::to_string(a.cols()) + " columns");
  IntVector out(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (sgn(a(i, k)) != 0) mpz_addmul(out[i].get_mpz_t(), a(i, k).get_mpz_t(), v[k].get_mpz_t());
  return out;
}

int compare(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    int c = cmp(a.entries()[k], b.entries()[k]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const IntMatrix& a,
                                                                    const IntMatrix& b) {
  require_same_shape(a, b, "compare");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return std::pair{i, j};
  return std::nullopt;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix w = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(w(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(w(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

IntVector ones(std::size_t n) { return IntVector(n, Integer(1)); }

namespace {

void require_square_nonnegative(const IntMatrix& a, const char* op) {
  if (!a.is_square()) throw ShapeError(std::string(op) + ": matrix is not square");
  if (!a.is_nonnegative()) throw DomainError(std::string(op) + ": matrix has a negative entry");
}

std::vector<bool> reachable(const IntMatrix& a, std::size_t start, bool reversed) {
  const std::size_t n = a.rows();
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> todo;
  seen[start] = true;
  todo.push(start);
  while (!todo.empty()) {
    std::size_t u = todo.front();
    todo.pop();
    for (std::size_t v = 0; v < n; ++v) {
      const Integer& e = reversed ? a(v, u) : a(u, v);
      if (sgn(e) > 0 && !seen[v]) {
        seen[v] = true;
        todo.push(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_irreducible(const IntMatrix& a) {
  require_square_nonnegative(a, "is_irreducible");
  if (a.rows() == 1) return sgn(a(0, 0)) > 0;
  auto fwd = reachable(a, 0, false);
  auto bwd = reachable(a, 0, true);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

bool is_permutation_matrix(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("is_permutation_matrix: matrix is not square");
  const std::size_t n = a.rows();
  std::vector<int> col_hits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int row_hits = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Integer& x = a(i, j);
      if (sgn(x) == 0) continue;
      if (x != 1) return false;
      ++row_hits;
      ++col_hits[j];
    }
    if (row_hits != 1) return false;
  }
  return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
}

// Period via BFS levels from vertex 0: gcd over arcs u->v of level(u) + 1 - level(v).
static Integer period_of(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<long> level(n, -1);
  std::queue<std::size_t> todo;
  level[0] = 0;
  todo.push(0);
  while (!todo.empty()) {
    std::size_t u = todo.front();
    todo.pop();
    for (std::size_t v = 0; v < n; ++v)
      if (sgn(a(u, v)) > 0 && level[v] < 0) {
        level[v] = level[u] + 1;
        todo.push(v);
      }
  }
  long g = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (sgn(a(u, v)) > 0) g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
  return Integer(g);
}

MatrixProfile profile(const IntMatrix& a) {
  MatrixProfile p;
  p.rows = a.rows();
  p.cols = a.cols();
  p.is_nonnegative = a.is_nonnegative();
  p.is_square = a.is_square();
  if (p.is_nonnegative) p.total_edge_count = a.entry_sum();
  if (p.is_square) p.is_permutation = is_permutation_matrix(a);
  if (p.is_square && p.is_nonnegative) {
    p.is_irreducible = is_irreducible(a);
    if (p.is_irreducible) p.period = period_of(a);
  }
  return p;
}

std::string to_string(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + "]";
}

}  // namespace ssekit
