#include "ssekit/ktheory.hpp"

#include <algorithm>

#include "ssekit/errors.hpp"

namespace ssekit {

namespace {

struct Workspace {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
};

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) mpz_swap(m(a, j).get_mpz_t(), m(b, j).get_mpz_t());
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) mpz_swap(m(i, a).get_mpz_t(), m(i, b).get_mpz_t());
}

// row[dst] += q * row[src] over columns [from, cols).
void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q,
                      std::size_t from = 0) {
  for (std::size_t j = from; j < m.cols(); ++j)
    if (sgn(m(src, j)) != 0) mpz_addmul(m(dst, j).get_mpz_t(), q.get_mpz_t(), m(src, j).get_mpz_t());
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q,
                      std::size_t from = 0) {
  for (std::size_t i = from; i < m.rows(); ++i)
    if (sgn(m(i, src)) != 0) mpz_addmul(m(i, dst).get_mpz_t(), q.get_mpz_t(), m(i, src).get_mpz_t());
}

// Least |entry| in the block [t.., t..], row-major tie-break.
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const IntMatrix& s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      const Integer& x = s(i, j);
      if (sgn(x) == 0) continue;
      if (!best || mpz_cmpabs(x.get_mpz_t(), s(best->first, best->second).get_mpz_t()) < 0) best = std::pair{i, j};
    }
  return best;
}

}  // namespace

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  Workspace w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& S = w.S;
  const std::size_t rows = S.rows();
  const std::size_t cols = S.cols();
  Integer q;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      auto pivot = find_pivot(S, t);
      if (!pivot) return {std::move(w.U), std::move(S), std::move(w.V)};
      swap_rows(S, t, pivot->first);
      swap_rows(w.U, t, pivot->first);
      swap_cols(S, t, pivot->second);
      swap_cols(w.V, t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(S(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        q = -q;
        add_row_multiple(S, i, t, q, t);
        add_row_multiple(w.U, i, t, q);
        if (sgn(S(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(S(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        q = -q;
        add_col_multiple(S, j, t, q, t);
        add_col_multiple(w.V, j, t, q);
        if (sgn(S(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the active block; otherwise fold the
      // offending row into row t and reduce again with a smaller pivot.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            offending = i;
            break;
          }
      if (!offending) break;
      add_row_multiple(S, t, *offending, Integer(1), t);
      add_row_multiple(w.U, t, *offending, Integer(1));
    }
    if (sgn(S(t, t)) < 0) {
      for (std::size_t j = t; j < cols; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < rows; ++j) w.U(t, j) = -w.U(t, j);
    }
  }
  return {std::move(w.U), std::move(S), std::move(w.V)};
}

Integer CokerPresentation::order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors)
    if (sgn(d) != 0) o *= d;
  return o;
}

bool operator<(const CokerClass& a, const CokerClass& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                      b.coords.end(),
                                      [](const Integer& x, const Integer& y) { return cmp(x, y) < 0; });
}

std::string to_string(const CokerClass& c) { return to_string(c.coords); }

CokerPresentation cokernel(const IntMatrix& relation) {
  if (!relation.is_square()) throw ShapeError("cokernel: relation matrix must be square");
  CokerPresentation g{relation.rows(), relation, smith_normal_form(relation), {}, {}, 0};
  g.invariant_factors = g.smith.diagonal();
  for (const auto& d : g.invariant_factors) {
    if (sgn(d) == 0)
      ++g.free_rank;
    else if (d > 1)
      g.torsion.push_back(d);
  }
  return g;
}

CokerPresentation k0_group(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("k0_group: matrix is not square");
  return cokernel(IntMatrix::identity(a.rows()) - a.transpose());
}

Integer det_i_minus(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("det_i_minus: matrix is not square");
  return determinant(IntMatrix::identity(a.rows()) - a);
}

CokerClass reduce_coords(IntVector raw, const CokerPresentation& g) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Integer& d = g.invariant_factors[i];
    if (sgn(d) != 0) mpz_fdiv_r(raw[i].get_mpz_t(), raw[i].get_mpz_t(), d.get_mpz_t());
  }
  return CokerClass{std::move(raw)};
}

CokerClass class_of(const IntVector& v, const CokerPresentation& g) {
  if (v.size() != g.ambient_rank)
    throw ShapeError("class_of: vector length " + std::to_string(v.size()) +
                     " does not match ambient rank " + std::to_string(g.ambient_rank));
  return reduce_coords(g.smith.U * v, g);
}

CokerClass combine(const std::vector<CokerClass>& classes, const IntVector& coeffs,
                   const CokerPresentation& g) {
  if (classes.size() != coeffs.size()) throw ShapeError("combine: coefficient count mismatch");
  IntVector raw(g.ambient_rank, Integer(0));
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    for (std::size_t i = 0; i < raw.size(); ++i)
      mpz_addmul(raw[i].get_mpz_t(), coeffs[k].get_mpz_t(), classes[k].coords[i].get_mpz_t());
  }
  return reduce_coords(std::move(raw), g);
}

LatticeWitness lattice_membership(const IntVector& v, const IntMatrix& m) {
  return lattice_membership(v, m, smith_normal_form(m));
}

LatticeWitness lattice_membership(const IntVector& v, const IntMatrix& m,
                                  const SmithDecomposition& smith) {
  if (v.size() != m.rows()) throw ShapeError("lattice_membership: vector length mismatch");
  // M w = v  <=>  S y = U v with w = V y.
  IntVector uv = smith.U * v;
  IntVector y(m.cols(), Integer(0));
  for (std::size_t i = 0; i < uv.size(); ++i) {
    const bool on_diagonal = i < std::min(m.rows(), m.cols());
    const Integer d = on_diagonal ? smith.S(i, i) : Integer(0);
    if (sgn(d) == 0) {
      if (sgn(uv[i]) != 0) return {};
      continue;
    }
    if (!mpz_divisible_p(uv[i].get_mpz_t(), d.get_mpz_t())) return {};
    mpz_divexact(y[i].get_mpz_t(), uv[i].get_mpz_t(), d.get_mpz_t());
  }
  return {true, smith.V * y};
}

CokerMap::CokerMap(IntMatrix matrix, const CokerPresentation& source,
                   const CokerPresentation& target)
    : matrix_(std::move(matrix)), source_(&source), target_(&target) {
  if (matrix_.rows() != target.ambient_rank || matrix_.cols() != source.ambient_rank)
    throw ShapeError("induced_map: matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " +
                     std::to_string(target.ambient_rank) + "x" +
                     std::to_string(source.ambient_rank));
  IntMatrix image = matrix_ * source.relation;
  for (std::size_t j = 0; j < image.cols(); ++j) {
    if (!lattice_membership(image.column(j), target.relation, target.smith).member)
      throw VerificationError("induced map is not well defined: column " + std::to_string(j + 1) +
                              " of M*relation is outside the target relation lattice");
  }
}

CokerClass CokerMap::apply(const IntVector& v) const { return class_of(matrix_ * v, *target_); }

std::vector<CokerClass> CokerMap::basis_images() const {
  std::vector<CokerClass> out;
  out.reserve(matrix_.cols());
  for (std::size_t j = 0; j < matrix_.cols(); ++j) out.push_back(class_of(matrix_.column(j), *target_));
  return out;
}

CokerMap induced_map(const IntMatrix& m, const CokerPresentation& source,
                     const CokerPresentation& target) {
  return CokerMap(m, source, target);
}

bool groups_isomorphic(const CokerPresentation& g1, const CokerPresentation& g2) {
  return g1.torsion == g2.torsion && g1.free_rank == g2.free_rank;
}

}  // namespace ssekit
