#include <doctest.h>

#include <random>

#include "random_matrices.hpp"
#include "ssekit/errors.hpp"
#include "ssekit/factor.hpp"
#include "ssekit/graphs.hpp"
#include "ssekit/ktheory.hpp"
#include "ssekit/lemmas.hpp"

using namespace ssekit;

namespace {

// Independent check of a Smith decomposition against its input.
void check_smith(const IntMatrix& m, const SmithDecomposition& s) {
  REQUIRE(s.U * m * s.V == s.S);
  REQUIRE(abs(determinant(s.U)) == 1);
  REQUIRE(abs(determinant(s.V)) == 1);
  for (std::size_t i = 0; i < s.S.rows(); ++i)
    for (std::size_t j = 0; j < s.S.cols(); ++j)
      if (i != j) REQUIRE(s.S(i, j) == 0);
  auto d = s.diagonal();
  bool zeros = false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) {
      zeros = true;
      continue;
    }
    REQUIRE_FALSE(zeros);
    REQUIRE(d[i] > 0);
    if (i + 1 < d.size() && d[i + 1] != 0) REQUIRE(d[i + 1] % d[i] == 0);
  }
}

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.U == IntMatrix::identity(3));
  CHECK(s.V == IntMatrix::identity(3));
  CHECK(s.S == IntMatrix::identity(3));

  s = smith_normal_form(IntMatrix::of({{2, 0}, {0, 3}}));
  CHECK(s.diagonal() == vec({1, 6}));
  check_smith(IntMatrix::of({{2, 0}, {0, 3}}), s);

  s = smith_normal_form(IntMatrix(2, 3));
  CHECK(s.S.is_zero());
}

TEST_CASE("smith normal form on random rectangular matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m = random_matrix(rng, random_dim(rng, 6), random_dim(rng, 6), -9, 9);
    auto s = smith_normal_form(m);
    check_smith(m, s);
    auto again = smith_normal_form(m);
    CHECK(again.U == s.U);
    CHECK(again.V == s.V);
  }
  // Rank-deficient inputs.
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix x = random_matrix(rng, 5, 2, -4, 4), y = random_matrix(rng, 2, 5, -4, 4);
    check_smith(x * y, smith_normal_form(x * y));
  }
}

TEST_CASE("k0 examples") {
  auto g = k0_group(IntMatrix::of({{3}}));
  CHECK(g.torsion == vec({2}));
  CHECK(g.free_rank == 0);
  CHECK(g.order() == 2);
  g = k0_group(IntMatrix::of({{1, 1}, {1, 0}}));
  CHECK(g.torsion.empty());
  CHECK(g.free_rank == 0);
  g = k0_group(IntMatrix::of({{1, 1}, {1, 1}}));
  CHECK(g.torsion.empty());
  g = k0_group(IntMatrix::of({{2, 1}, {1, 2}}));
  CHECK(g.free_rank == 1);
  CHECK_FALSE(g.is_finite());
  CHECK_THROWS_AS(k0_group(IntMatrix::of({{1, 2}})), ShapeError);

  CHECK(det_i_minus(IntMatrix::of({{3}})) == -2);
  CHECK(det_i_minus(IntMatrix::of({{1, 1}, {1, 1}})) == -1);
}

TEST_CASE("class_of") {
  auto g = k0_group(IntMatrix::of({{3}}));
  CHECK(class_of(vec({0}), g) == CokerClass{vec({0})});
  CHECK(class_of(vec({1}), g) == CokerClass{vec({1})});
  CHECK(class_of(vec({3}), g) == CokerClass{vec({1})});
  CHECK(class_of(vec({-4}), g) == CokerClass{vec({0})});
  CHECK_THROWS_AS(class_of(vec({1, 1}), g), ShapeError);
}

TEST_CASE("classes are constant on cosets") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = random_dim(rng, 5);
    IntMatrix a = random_matrix(rng, n, n, 0, 3);
    auto g = k0_group(a);
    IntMatrix v = random_matrix(rng, n, 1, -20, 20), w = random_matrix(rng, n, 1, -20, 20);
    IntVector shifted = (v + g.relation * w).column(0);
    REQUIRE(class_of(v.column(0), g) == class_of(shifted, g));
    const CokerClass cls = class_of(v.column(0), g);
    for (std::size_t i = 0; i < n; ++i) {
      const Integer& d = g.invariant_factors[i];
      const Integer& x = cls.coords[i];
      if (d != 0) REQUIRE((x >= 0 && x < d));
    }
    // combine agrees with class_of of the same combination.
    IntMatrix u = random_matrix(rng, n, 1, -5, 5);
    IntVector coeffs{Integer(2), Integer(-3)};
    IntMatrix combo = v + v - u - u - u;
    REQUIRE(combine({class_of(v.column(0), g), class_of(u.column(0), g)}, coeffs, g) ==
            class_of(combo.column(0), g));
  }
}

TEST_CASE("lattice membership") {
  IntMatrix m = IntMatrix::of({{2, 1}, {0, 3}, {1, 1}});
  auto w = lattice_membership(m * ones(2), m);
  REQUIRE(w.member);
  CHECK(m * w.witness == m * ones(2));
  CHECK_FALSE(lattice_membership(vec({1}), IntMatrix::of({{2}})).member);
  auto rel = k0_group(IntMatrix::of({{3}})).relation;
  CHECK(lattice_membership(vec({2}), rel).member);
  CHECK_FALSE(lattice_membership(vec({1, 0, 0}), IntMatrix::of({{2, 0}, {0, 2}, {0, 0}})).member);
  CHECK_THROWS_AS(lattice_membership(vec({1}), m), ShapeError);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix x = random_matrix(rng, random_dim(rng, 5), random_dim(rng, 5), -6, 6);
    IntMatrix y = random_matrix(rng, x.cols(), 1, -6, 6);
    auto r = lattice_membership((x * y).column(0), x);
    REQUIRE(r.member);
    REQUIRE(x * r.witness == (x * y).column(0));
  }
}

TEST_CASE("induced maps") {
  IntMatrix c = IntMatrix::of({{1, 2}}), d = IntMatrix::of({{1}, {1}});
  auto ga = k0_group(c * d), gb = k0_group(d * c);
  auto phi = induced_map(c.transpose(), ga, gb);
  auto psi = induced_map(d.transpose(), gb, ga);
  for (std::size_t i = 0; i < ga.ambient_rank; ++i) {
    IntVector e(ga.ambient_rank, Integer(0));
    e[i] = 1;
    CHECK(class_of(psi.matrix() * phi.matrix() * e, ga) == class_of(e, ga));
  }
  CHECK(phi.basis_images().size() == 1);

  // Not well defined: Z/2 -> Z/3 by 1.
  auto z2 = k0_group(IntMatrix::of({{3}})), z3 = k0_group(IntMatrix::of({{4}}));
  CHECK_THROWS_AS(induced_map(IntMatrix::of({{1}}), z2, z3), VerificationError);
  try {
    induced_map(IntMatrix::of({{1}}), z2, z3);
  } catch (const VerificationError& err) {
    CHECK(std::string(err.what()).find("column 1") != std::string::npos);
  }
  CHECK_THROWS_AS(induced_map(IntMatrix::of({{1, 0}}), z2, z3), ShapeError);

  auto sa = splitting_matrices(c * d);
  auto unit = induced_map(sa.S.transpose(), k0_group(edge_transition_matrix(c * d)), ga);
  CHECK(unit.apply(ones(sa.S.rows())) == class_of(ones(1), ga));
}

TEST_CASE("groups_isomorphic") {
  CHECK(groups_isomorphic(k0_group(IntMatrix::of({{3}})), k0_group(IntMatrix::of({{1, 2}, {1, 2}}))));
  CHECK(groups_isomorphic(k0_group(IntMatrix::of({{2}})), k0_group(IntMatrix::of({{1, 1}, {1, 0}}))));
  CHECK_FALSE(groups_isomorphic(k0_group(IntMatrix::of({{3}})), k0_group(IntMatrix::of({{2, 1}, {1, 2}}))));
  CHECK_FALSE(groups_isomorphic(k0_group(IntMatrix::of({{2}})), k0_group(IntMatrix::of({{3}}))));
}

TEST_CASE("elementary equivalence transports the cokernel") {
  InstanceGenerator gen(77);
  for (int trial = 0; trial < 150; ++trial) {
    auto [c, d] = gen.composable_pair(4, 3);
    IntMatrix a = c * d, b = d * c;
    auto ga = k0_group(a), gb = k0_group(b);
    REQUIRE(groups_isomorphic(ga, gb));
    REQUIRE(det_i_minus(a) == det_i_minus(b));
    auto phi = induced_map(c.transpose(), ga, gb);
    auto psi = induced_map(d.transpose(), gb, ga);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      IntVector e(a.rows(), Integer(0));
      e[i] = 1;
      REQUIRE(psi.apply(phi.matrix() * e) == class_of(e, ga));
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
      IntVector e(b.rows(), Integer(0));
      e[i] = 1;
      REQUIRE(phi.apply(psi.matrix() * e) == class_of(e, gb));
    }
    // The square through the edge graphs.
    IntMatrix dh = dhat(c, d);
    auto sa = splitting_matrices(a), sb = splitting_matrices(b);
    auto gag = k0_group(edge_transition_matrix(a)), gbg = k0_group(edge_transition_matrix(b));
    auto dhat_t = induced_map(dh.transpose(), gag, gbg);
    auto sb_t = induced_map(sb.S.transpose(), gbg, gb);
    auto sa_t = induced_map(sa.S.transpose(), gag, ga);
    for (std::size_t i = 0; i < gag.ambient_rank; ++i) {
      IntVector e(gag.ambient_rank, Integer(0));
      e[i] = 1;
      REQUIRE(sb_t.apply(dhat_t.matrix() * e) == phi.apply(sa_t.matrix() * e));
    }
  }
}
