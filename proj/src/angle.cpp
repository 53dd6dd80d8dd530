#include "subgeo/angle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subgeo/principal.hpp"

namespace subgeo {

namespace {

double acos_clamped(double c) { return std::acos(std::clamp(c, 0.0, 1.0)); }

// log det of a Hermitian positive semidefinite matrix via eigenvalues;
// -inf when numerically singular. rank_floor guards the definite case.
double logdet_psd(const Matrix& h, double rel_cut, bool* definite) {
  if (h.rows() == 0) {
    if (definite) *definite = true;
    return 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& ev = es.eigenvalues();
  const double cut = rel_cut * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  double sum = 0.0;
  bool def = true;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) <= cut) {
      def = false;
      sum = -std::numeric_limits<double>::infinity();
      break;
    }
    sum += std::log(ev(i));
  }
  if (definite) *definite = def;
  return sum;
}

double log_abs_det(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::PartialPivLU<Matrix> lu(m);
  double sum = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    const double a = std::abs(lu.matrixLU()(i, i));
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(a);
  }
  return sum;
}

double theta_from_log_cos_sq(double log_cos_sq) {
  if (std::isinf(log_cos_sq) && log_cos_sq < 0) return M_PI_2;
  return acos_clamped(std::sqrt(std::min(std::exp(log_cos_sq), 1.0)));
}

// Theta from per-direction sin^2 values: cos^2 = prod(1 - lam_i), evaluated
// through log1p/expm1 so the result keeps full precision at both ends of
// [0, pi/2]; arccos alone loses half the digits near 0.
double theta_from_sin_sq(const RealVector& lam) {
  double log_cos_sq = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    const double l = std::clamp(lam(i), 0.0, 1.0);
    if (l >= 1.0) return M_PI_2;
    log_cos_sq += std::log1p(-l);
  }
  const double c = std::exp(0.5 * log_cos_sq);
  const double s = std::sqrt(std::max(0.0, -std::expm1(log_cos_sq)));
  return std::atan2(s, c);
}

constexpr double kLogHalf = -0.6931471805599453;  // switch point cos^2 = 1/2

}  // namespace

double angle_via_principal(const Subspace& v, const Subspace& w,
                           const Tolerances& tol) {
  detail::require_compatible(v, w);
  if (v.dim() == 0) return 0.0;
  if (v.dim() > w.dim()) return M_PI_2;
  RealVector angles = principal_angles(v, w, tol);
  RealVector lam(angles.size());
  for (int i = 0; i < angles.size(); ++i) {
    const double s = std::sin(angles(i));
    lam(i) = s * s;
  }
  return theta_from_sin_sq(lam);
}

double angle_via_contraction(const Multivector& a, const Multivector& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("zero blade");
  const Multivector ab = contraction(a, b);
  const double c = norm(ab) / (na * nb);
  if (a.grade() >= 0 && a.grade() == b.grade()) {
    // At equal grades the interior product collapses to the inner product.
    const double c2 = std::abs(inner(a, b)) / (na * nb);
    if (std::abs(c - c2) > 1e-9)
      throw std::runtime_error("interior/inner product disagreement");
  }
  if (c <= M_SQRT1_2) return acos_clamped(c);
  // Small-angle side: for blades, |a|^2 b - a ^ (a . b) has norm
  // |a|^2 |b| sin(theta) (expand a in bases adapted to the principal
  // directions of [a] against [b]); the residual is exact where arccos
  // of the cosine above would lose half the digits.
  const Multivector res = b * Complex(na * na) - wedge(a, ab);
  const double s = std::min(1.0, norm(res) / (na * na * nb));
  return std::atan2(s, c);
}

double angle_via_gram(const Matrix& v_raw, const Matrix& w_raw,
                      const Tolerances& tol) {
  if (v_raw.rows() != w_raw.rows())
    throw std::invalid_argument("ambient dimension mismatch");
  const int p = static_cast<int>(v_raw.cols());
  const int q = static_cast<int>(w_raw.cols());
  if (p == 0) return 0.0;
  if (q == 0) return M_PI_2;

  Matrix a = v_raw.adjoint() * v_raw;               // p x p
  Matrix b = w_raw.adjoint() * w_raw;               // q x q
  Matrix c = w_raw.adjoint() * v_raw;               // q x p

  const double rel = tol.effective_rank_rel(static_cast<int>(v_raw.rows()),
                                            std::max(p, q));
  bool def = false;
  const double logdet_a = logdet_psd(a, rel, &def);
  if (!def) throw std::invalid_argument("first spanning set is rank deficient");
  const double logdet_b = logdet_psd(b, rel, &def);
  if (!def) throw std::invalid_argument("second spanning set is rank deficient");

  const Matrix x = b.llt().solve(c);                // q x p
  Matrix m = c.adjoint() * x;                       // p x p
  m = 0.5 * (m + Matrix(m.adjoint()));
  const double logdet_m = logdet_psd(m, rel, nullptr);
  const double log_cos_sq = logdet_m - logdet_a;
  double theta;
  if (log_cos_sq > kLogHalf) {
    // det(C^H B^-1 C)/det A = prod(1 - lam_i) with lam_i the generalized
    // eigenvalues of the residual Gram against A; the residual vectors are
    // computed directly, so small angles keep full precision.
    const Matrix r = v_raw - w_raw * x;
    Matrix g = r.adjoint() * r;
    g = 0.5 * (g + Matrix(g.adjoint()));
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(g, a);
    theta = theta_from_sin_sq(ges.eigenvalues());
  } else {
    theta = theta_from_log_cos_sq(log_cos_sq);
  }

  if (p == q) {
    const double cos_alt =
        std::exp(log_abs_det(c) - 0.5 * (logdet_a + logdet_b));
    if (std::abs(std::cos(theta) - std::min(cos_alt, 1.0)) > 1e-8)
      throw std::runtime_error("determinant route disagreement");
  }
  return theta;
}

double angle_via_projection_det(const Subspace& v, const Subspace& w) {
  detail::require_compatible(v, w);
  const int p = v.dim();
  if (p == 0) return 0.0;
  if (w.dim() == 0) return M_PI_2;
  Matrix proj = w.basis().adjoint() * v.basis();  // q x p
  Matrix m = proj.adjoint() * proj;
  m = 0.5 * (m + Matrix(m.adjoint()));
  Tolerances tol;
  const double rel = tol.effective_rank_rel(v.ambient(), std::max(p, w.dim()));
  const double log_cos_sq = logdet_psd(m, rel, nullptr);
  double theta;
  if (log_cos_sq > kLogHalf) {
    // Same determinant through the complementary factor:
    // det(P^H P) = det(I - R^H R) with R the residual of the projection.
    const Matrix r = v.basis() - w.basis() * proj;
    Matrix g = r.adjoint() * r;
    g = 0.5 * (g + Matrix(g.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    theta = theta_from_sin_sq(es.eigenvalues());
  } else {
    theta = theta_from_log_cos_sq(log_cos_sq);
  }
  if (p == w.dim()) {
    const double cos_alt = std::exp(log_abs_det(proj));
    if (std::abs(std::cos(theta) - std::min(cos_alt, 1.0)) > 1e-8)
      throw std::runtime_error("determinant route disagreement");
  }
  return theta;
}

double angle_via_multivector_projection(const Subspace& v, const Subspace& w) {
  detail::require_compatible(v, w);
  if (v.ambient() > 32)
    throw std::invalid_argument("ambient dimension exceeds blade representation");
  const Multivector a = blade_of(v);
  const Multivector pa = project_multivector(w, a);
  const double na = norm(a);
  const double c = norm(pa) / na;
  if (c <= M_SQRT1_2) return acos_clamped(c);
  // The rejected component gives sin(theta) directly where arccos is flat.
  const double s = std::min(1.0, norm(a - pa) / na);
  return std::atan2(s, c);
}

double projection_factor(const Subspace& v, const Subspace& w,
                         const Tolerances& tol) {
  const double c = std::cos(angle_via_principal(v, w, tol));
  return v.field() == Field::Real ? c : c * c;
}

BcDecomposition bc_coordinate_decomposition(const Subspace& v, const Subspace& w,
                                            const Matrix& beta,
                                            const Tolerances& tol) {
  detail::require_compatible(v, w);
  const int n = v.ambient();
  const int p = v.dim();
  const int q = w.dim();
  if (beta.rows() != n || beta.cols() != n)
    throw std::invalid_argument("beta must be a square basis of the ambient space");

  // beta must be orthogonal with nonzero vectors; normalize for internal use.
  Matrix bn = beta;
  for (int j = 0; j < n; ++j) {
    const double len = bn.col(j).norm();
    if (len < tol.effective_rank_rel(n, n))
      throw std::invalid_argument("beta contains a null vector");
    bn.col(j) /= len;
  }
  Matrix gram = bn.adjoint() * bn;
  gram -= Matrix::Identity(n, n);
  if (gram.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("beta is not orthogonal");
  Subspace w_check = Subspace::from_orthonormal(bn.leftCols(q), v.field());
  if (!same_span(w_check, w, tol))
    throw std::invalid_argument("leading beta vectors do not span w");

  BcDecomposition out;
  out.total = 0.0;
  if (p == 0) return out;

  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  const bool real = v.field() == Field::Real;
  while (true) {
    if (idx.back() >= n) break;
    const bool inside_w = idx.back() < q;  // ascending indices
    if (!inside_w) {
      Matrix cols(n, p);
      for (int i = 0; i < p; ++i) cols.col(i) = bn.col(idx[i]);
      Subspace u = Subspace::from_orthonormal(cols, v.field());
      const double f = projection_factor(v, u, tol);
      out.terms.push_back({idx, f});
      out.total += real ? f * f : f;
    }
    // next p-combination of {0..n-1}
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int k = i + 1; k < p; ++k) idx[k] = idx[k - 1] + 1;
  }
  return out;
}

}  // namespace subgeo
