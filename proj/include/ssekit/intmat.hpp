#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ssekit {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense matrix of arbitrary-precision integers, stored row-major.
/// Both dimensions are at least one.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  /// Literal construction for small matrices, e.g. `IntMatrix::of({{1, 1}, {1, 0}})`.
  static IntMatrix of(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& diag);
  static IntMatrix column_vector(const IntVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const std::vector<Integer>& entries() const noexcept { return data_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;

  bool is_zero() const;
  bool is_nonnegative() const;
  Integer max_entry() const;
  Integer entry_sum() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);

/// Total order: shape first, then row-major entries.
int compare(const IntMatrix& a, const IntMatrix& b);
inline bool operator<(const IntMatrix& a, const IntMatrix& b) { return compare(a, b) < 0; }

/// First (row, col) where a and b differ, if any; shapes must agree.
std::optional<std::pair<std::size_t, std::size_t>> first_difference(const IntMatrix& a,
                                                                    const IntMatrix& b);

/// Exact determinant via fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

IntVector ones(std::size_t n);

struct MatrixProfile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool is_nonnegative = false;
  bool is_square = false;
  bool is_irreducible = false;
  bool is_permutation = false;
  std::optional<Integer> period;            // square irreducible only
  std::optional<Integer> total_edge_count;  // nonnegative only
};

/// Strong connectivity of the support graph i -> j (A(i,j) > 0). A 1x1
/// matrix is irreducible iff its entry is positive, so that every (i,j)
/// is reached by a path of positive length.
bool is_irreducible(const IntMatrix& a);

/// Exactly one nonzero per row and column, and that entry equals 1.
bool is_permutation_matrix(const IntMatrix& a);

MatrixProfile profile(const IntMatrix& a);

std::string to_string(const IntVector& v);

}  // namespace ssekit
