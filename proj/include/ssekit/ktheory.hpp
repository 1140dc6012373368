#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssekit/intmat.hpp"

namespace ssekit {

/// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ... | dr > 0
/// followed by zeros.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  /// Diagonal of S, length min(rows, cols).
  IntVector diagonal() const;
};

/// Deterministic: the pivot is the nonzero entry of least absolute value in
/// the active block, ties broken by row-major position.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// The group Z^N / relation * Z^N for a square relation matrix, in practice
/// I - A^t. Classes are coordinates of U*v, coordinate i reduced modulo d_i
/// (d_i = 1 coordinates are always 0; d_i = 0 coordinates are free).
struct CokerPresentation {
  std::size_t ambient_rank = 0;
  IntMatrix relation;
  SmithDecomposition smith;
  IntVector invariant_factors;  // full diagonal, length ambient_rank
  IntVector torsion;            // factors > 1
  std::size_t free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  /// Group order; only meaningful when is_finite().
  Integer order() const;
};

/// Canonical coordinates of a cokernel class. Two classes of the same
/// presentation are equal iff their coordinates are equal.
struct CokerClass {
  IntVector coords;

  friend bool operator==(const CokerClass&, const CokerClass&) = default;
  friend bool operator<(const CokerClass& a, const CokerClass& b);
};

std::string to_string(const CokerClass& c);

/// Presentation of Z^n / M Z^n for an arbitrary square integer matrix M.
CokerPresentation cokernel(const IntMatrix& relation);

/// coker(I - A^t).
CokerPresentation k0_group(const IntMatrix& a);

/// det(I - A).
Integer det_i_minus(const IntMatrix& a);

CokerClass class_of(const IntVector& v, const CokerPresentation& g);

/// Reduces raw (unreduced) U-coordinates into canonical form. Canonical
/// coordinates are linear in v before reduction, so combinations of classes
/// can be formed on coordinates and reduced once.
CokerClass reduce_coords(IntVector raw, const CokerPresentation& g);

/// Canonical class of sum_k coeffs[k] * classes[k].
CokerClass combine(const std::vector<CokerClass>& classes, const IntVector& coeffs,
                   const CokerPresentation& g);

struct LatticeWitness {
  bool member = false;
  IntVector witness;  // M * witness = v when member
};

/// Decides v in M Z^cols(M) using the Smith decomposition of M.
LatticeWitness lattice_membership(const IntVector& v, const IntMatrix& m);
LatticeWitness lattice_membership(const IntVector& v, const IntMatrix& m,
                                  const SmithDecomposition& smith);

/// Homomorphism of cokernels induced by an integer matrix. Construction
/// certifies well-definedness: every column of matrix * source.relation must
/// lie in the column lattice of target.relation.
class CokerMap {
 public:
  CokerMap(IntMatrix matrix, const CokerPresentation& source, const CokerPresentation& target);

  const IntMatrix& matrix() const { return matrix_; }
  const CokerPresentation& source() const { return *source_; }
  const CokerPresentation& target() const { return *target_; }

  CokerClass apply(const IntVector& v) const;
  /// Images of the standard basis classes e_1, ..., e_n of the source.
  std::vector<CokerClass> basis_images() const;

 private:
  IntMatrix matrix_;
  const CokerPresentation* source_;
  const CokerPresentation* target_;
};

/// Throws VerificationError naming the first offending column when the map
/// is not well defined. Both presentations must outlive the returned map.
CokerMap induced_map(const IntMatrix& m, const CokerPresentation& source,
                     const CokerPresentation& target);

/// Same invariant factors (> 1) and free rank.
bool groups_isomorphic(const CokerPresentation& g1, const CokerPresentation& g2);

}  // namespace ssekit
