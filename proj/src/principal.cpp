#include "subgeo/principal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subgeo {

int PrincipalDecomposition::common_dim(double angle_tol) const {
  int k = 0;
  while (k < angles.size() && angles(k) < angle_tol) ++k;
  return k;
}

PrincipalDecomposition principal_decomposition(const Subspace& v,
                                               const Subspace& w,
                                               const Tolerances& tol) {
  detail::require_compatible(v, w);
  const int p = v.dim();
  const int q = w.dim();
  const int m = std::min(p, q);

  PrincipalDecomposition out;
  if (m == 0) {
    out.angles = RealVector(0);
    out.e = v.basis();
    out.f = w.basis();
    return out;
  }

  Matrix cross = v.basis().adjoint() * w.basis();  // p x q
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector sigma = svd.singularValues();
  if (sigma(0) > 1.0 + 1e-8)
    throw std::runtime_error("cosine singular value exceeds 1 beyond rounding");

  out.e = v.basis() * svd.matrixU();
  out.f = w.basis() * svd.matrixV();
  out.angles = RealVector(m);

  // Residuals of the paired w-vectors against v give the sines directly.
  Matrix residual =
      out.f.leftCols(m) - v.basis() * (v.basis().adjoint() * out.f.leftCols(m));
  for (int i = 0; i < m; ++i) {
    const double c = std::clamp(sigma(i), 0.0, 1.0);
    if (c > M_SQRT1_2) {
      const double s = std::min(residual.col(i).norm(), 1.0);
      out.angles(i) = std::asin(s);
    } else {
      out.angles(i) = std::acos(c);
    }
  }

  // SVD order (descending cosines) already gives ascending angles; the mixed
  // arcsin/arccos rounding can still swap near ties, so enforce order.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.angles(a) < out.angles(b); });
  bool permuted = false;
  for (int i = 0; i < m; ++i) permuted |= order[i] != i;
  if (permuted) {
    RealVector ang(m);
    Matrix e = out.e, f = out.f;
    for (int i = 0; i < m; ++i) {
      ang(i) = out.angles(order[i]);
      e.col(i) = out.e.col(order[i]);
      f.col(i) = out.f.col(order[i]);
    }
    out.angles = ang;
    out.e = std::move(e);
    out.f = std::move(f);
  }

  // Align pair phases so <e_i, f_i> is real and nonnegative.
  for (int i = 0; i < m; ++i) {
    const Complex c = out.e.col(i).dot(out.f.col(i));
    const double a = std::abs(c);
    if (a > 1e-14) out.f.col(i) *= std::conj(c) / a;
  }
  return out;
}

RealVector principal_angles(const Subspace& v, const Subspace& w,
                            const Tolerances& tol) {
  return principal_decomposition(v, w, tol).angles;
}

double vector_angle(const Vector& v, const Vector& w) {
  const double nv = v.norm();
  const double nw = w.norm();
  if (nv == 0.0) return 0.0;
  if (nw == 0.0) return M_PI_2;
  const double c = std::clamp(v.dot(w).real() / (nv * nw), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace subgeo
