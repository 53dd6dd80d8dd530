#pragma once

#include <vector>

#include "subgeo/core.hpp"
#include "subgeo/random.hpp"

namespace testutil {

using subgeo::Complex;
using subgeo::Field;
using subgeo::Matrix;
using subgeo::Subspace;

struct PlantedPair {
  Subspace v;
  Subspace w;
};

// Builds a pair with prescribed principal angles: each angle lives in its own
// coordinate 2-plane, W gets extra_w further directions orthogonal to V, and
// both bases are then rotated by a common random unitary so nothing stays
// axis-aligned. Requires n >= 2 * angles.size() + extra_w.
inline PlantedPair plant_angles(int n, const std::vector<double>& angles,
                                int extra_w, Field field, subgeo::Rng& rng) {
  const int m = static_cast<int>(angles.size());
  Matrix bv = Matrix::Zero(n, m);
  Matrix bw = Matrix::Zero(n, m + extra_w);
  for (int i = 0; i < m; ++i) {
    bv(2 * i, i) = 1.0;
    bw(2 * i, i) = std::cos(angles[i]);
    bw(2 * i + 1, i) = std::sin(angles[i]);
    if (field == Field::Complex) {
      const double phi = 6.283185307179586 * rng.uniform();
      bw.col(i) *= Complex(std::cos(phi), std::sin(phi));
    }
  }
  for (int j = 0; j < extra_w; ++j) bw(2 * m + j, m + j) = 1.0;

  Matrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.scalar(field);
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  return {Subspace::from_spanning(q * bv, field),
          Subspace::from_spanning(q * bw, field)};
}

inline double orthonormality_residual(const Matrix& m) {
  return (m.adjoint() * m -
          Matrix::Identity(m.cols(), m.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace testutil
