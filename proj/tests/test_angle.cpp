#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subgeo/angle.hpp"
#include "subgeo/metrics.hpp"
#include "subgeo/multivector.hpp"
#include "subgeo/random.hpp"
#include "test_helpers.hpp"

using namespace subgeo;
using testutil::plant_angles;

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kHalfPi = 1.5707963267948966;

// raw spanning matrix for v: basis columns mixed by a random invertible map
Matrix raw_spanning(const Subspace& v, Rng& rng) {
  const int p = v.dim();
  Matrix mix(p, p);
  do {
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) mix(r, c) = rng.scalar(v.field());
  } while (p > 0 && std::abs(Eigen::PartialPivLU<Matrix>(mix).determinant()) < 1e-3);
  return v.basis() * mix;
}

}  // namespace

TEST_CASE("all computation routes agree on planted angles") {
  Rng rng(601);
  for (Field f : {Field::Real, Field::Complex}) {
    const auto pair = plant_angles(7, {kPi / 6, kPi / 4}, 1, f, rng);
    const double want = std::acos(std::sqrt(6.0) / 4.0);
    CHECK(angle_via_principal(pair.v, pair.w) ==
          doctest::Approx(want).epsilon(1e-12));
    CHECK(angle_via_contraction(blade_of(pair.v), blade_of(pair.w)) ==
          doctest::Approx(want).epsilon(1e-12));
    CHECK(angle_via_gram(raw_spanning(pair.v, rng),
                         raw_spanning(pair.w, rng)) ==
          doctest::Approx(want).epsilon(1e-11));
    CHECK(angle_via_projection_det(pair.v, pair.w) ==
          doctest::Approx(want).epsilon(1e-12));
    CHECK(angle_via_multivector_projection(pair.v, pair.w) ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("routes agree on random pairs") {
  Rng rng(603);
  for (long trial = 0; trial < 60; ++trial) {
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    const int n = rng.uniform_int(2, 6);
    const int p = rng.uniform_int(1, n);
    const int q = rng.uniform_int(1, n);
    const Subspace v = random_subspace(n, p, f, rng);
    const Subspace w = random_subspace(n, q, f, rng);
    const double base = angle_via_principal(v, w);
    CHECK(std::abs(angle_via_contraction(blade_of(v), blade_of(w)) - base) <
          1e-10);
    CHECK(std::abs(angle_via_gram(raw_spanning(v, rng),
                                  raw_spanning(w, rng)) - base) < 1e-8);
    CHECK(std::abs(angle_via_projection_det(v, w) - base) < 1e-10);
    CHECK(std::abs(angle_via_multivector_projection(v, w) - base) < 1e-10);
  }
}

TEST_CASE("degenerate dimensions") {
  Rng rng(605);
  const Subspace z = Subspace::zero(5, Field::Real);
  const Subspace w = random_subspace(5, 3, Field::Real, rng);
  const Subspace big = random_subspace(5, 4, Field::Real, rng);
  CHECK(angle_via_principal(z, w) == 0.0);
  CHECK(angle_via_principal(w, z) == kHalfPi);
  CHECK(angle_via_principal(big, w) == kHalfPi);  // dim v > dim w
  CHECK(angle_via_contraction(blade_of(big), blade_of(w)) == kHalfPi);
  CHECK(angle_via_projection_det(big, w) == kHalfPi);
}

TEST_CASE("fully orthogonal pairs sit at a right angle") {
  Rng rng(607);
  const Subspace v = random_subspace(6, 2, Field::Complex, rng);
  const Subspace w = random_subspace_of(complement(v), 3, rng);
  CHECK(angle_via_principal(v, w) == doctest::Approx(kHalfPi).epsilon(1e-12));
  CHECK(angle_via_multivector_projection(v, w) ==
        doctest::Approx(kHalfPi).epsilon(1e-12));
}

TEST_CASE("gram route rejects rank-deficient spanning sets") {
  Matrix bad(4, 2);
  bad.col(0) = Vector::Unit(4, 0);
  bad.col(1) = Vector::Unit(4, 0) * 2.0;
  Matrix good = Matrix::Identity(4, 2);
  CHECK_THROWS_AS(angle_via_gram(bad, good), std::invalid_argument);
  CHECK_THROWS_AS(angle_via_contraction(Multivector(4, Field::Real),
                                        Multivector(4, Field::Real)),
                  std::invalid_argument);
}

TEST_CASE("projection factor is the volume shrink factor") {
  Rng rng(609);
  const auto re = plant_angles(7, {kPi / 6, kPi / 4}, 1, Field::Real, rng);
  CHECK(projection_factor(re.v, re.w) ==
        doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(1e-12));
  const auto cx = plant_angles(7, {kPi / 6, kPi / 4}, 1, Field::Complex, rng);
  // complex pairs double in the realified picture: factor is the square
  CHECK(projection_factor(cx.v, cx.w) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  // realified subspaces reproduce the complex factor with the real rule
  CHECK(projection_factor(realify(cx.v), realify(cx.w)) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-11));
}

TEST_CASE("coordinate split of the Binet-Cauchy distance") {
  Rng rng(611);
  for (Field f : {Field::Real, Field::Complex}) {
    const auto pair = plant_angles(6, {kPi / 6, kPi / 4}, 1, f, rng);
    const int n = 6, q = pair.w.dim();
    Matrix beta(n, n);
    beta.leftCols(q) = pair.w.basis();
    beta.rightCols(n - q) = complement(pair.w).basis();
    const BcDecomposition dec = bc_coordinate_decomposition(pair.v, pair.w, beta);
    // total equals 1 - prod cos^2 = 5/8 for these angles
    CHECK(dec.total == doctest::Approx(5.0 / 8.0).epsilon(1e-11));
    const double dbc = asym_distance(Metric::BinetCauchy, pair.v, pair.w);
    CHECK(std::sqrt(dec.total) == doctest::Approx(dbc).epsilon(1e-11));
    double sum = 0.0;
    for (const BcTerm& term : dec.terms) {
      REQUIRE(term.indices.size() == 2);
      CHECK(term.indices.back() >= q);  // never fully inside w
      CHECK(term.factor >= 0.0);
      sum += f == Field::Real ? term.factor * term.factor : term.factor;
    }
    CHECK(sum == doctest::Approx(dec.total).epsilon(1e-12));
  }
}

TEST_CASE("coordinate split validates its basis") {
  Rng rng(613);
  const Subspace v = random_subspace(4, 2, Field::Real, rng);
  const Subspace w = random_subspace(4, 2, Field::Real, rng);
  Matrix beta(4, 4);
  beta.leftCols(2) = w.basis();
  beta.rightCols(2) = complement(w).basis();
  Matrix skew = beta;
  skew.col(3) += skew.col(0);
  CHECK_THROWS_AS(bc_coordinate_decomposition(v, w, skew),
                  std::invalid_argument);
  Matrix wrong(4, 4);
  wrong.leftCols(2) = complement(w).basis();
  wrong.rightCols(2) = w.basis();
  CHECK_THROWS_AS(bc_coordinate_decomposition(v, w, wrong),
                  std::invalid_argument);
  // scaling the columns is allowed: only directions matter
  Matrix scaled = beta;
  scaled.col(1) *= 3.0;
  const BcDecomposition a = bc_coordinate_decomposition(v, w, beta);
  const BcDecomposition b = bc_coordinate_decomposition(v, w, scaled);
  CHECK(a.total == doctest::Approx(b.total).epsilon(1e-12));
}
