#include "subgeo/core.hpp"

#include <cmath>
#include <limits>

#include "subgeo/principal.hpp"

namespace subgeo {

namespace {

constexpr double kOrthoCheck = 1e-12;

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

}  // namespace

double Tolerances::effective_rank_rel(int rows, int cols) const {
  if (rank_rel > 0.0) return rank_rel;
  return std::max(rows, cols) * std::numeric_limits<double>::epsilon();
}

Subspace::Subspace(int ambient, Field field)
    : ambient_(ambient), field_(field), basis_(ambient, 0) {
  if (ambient < 0) throw std::invalid_argument("negative ambient dimension");
}

Subspace Subspace::zero(int ambient, Field field) { return Subspace(ambient, field); }

Subspace Subspace::full(int ambient, Field field) {
  return from_orthonormal(Matrix::Identity(ambient, ambient), field);
}

Subspace Subspace::from_orthonormal(Matrix basis, Field field) {
  Subspace s(static_cast<int>(basis.rows()), field);
  if (basis.cols() > basis.rows())
    throw std::invalid_argument("more basis vectors than ambient dimension");
  if (!all_finite(basis)) throw std::invalid_argument("non-finite basis entry");
  if (basis.cols() > 0) {
    Matrix gram = basis.adjoint() * basis;
    gram -= Matrix::Identity(basis.cols(), basis.cols());
    if (gram.cwiseAbs().maxCoeff() > kOrthoCheck)
      throw std::invalid_argument("basis not orthonormal");
  }
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::from_spanning(const Matrix& spanning, Field field,
                                 const Tolerances& tol) {
  if (!all_finite(spanning)) throw std::invalid_argument("non-finite basis entry");
  const int n = static_cast<int>(spanning.rows());
  if (spanning.cols() == 0) return zero(n, field);
  Eigen::JacobiSVD<Matrix> svd(spanning, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol.effective_rank_rel(n, static_cast<int>(spanning.cols())) *
                     (sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut && sv(rank) > 0.0) ++rank;
  if (rank == 0) return zero(n, field);
  return from_orthonormal(svd.matrixU().leftCols(rank), field);
}

namespace detail {
void require_compatible(const Subspace& v, const Subspace& w) {
  if (v.ambient() != w.ambient())
    throw std::invalid_argument("ambient dimension mismatch");
  if (v.field() != w.field()) throw std::invalid_argument("field mismatch");
}
}  // namespace detail

Subspace complement(const Subspace& v) {
  const int n = v.ambient();
  const int p = v.dim();
  if (p == 0) return Subspace::full(n, v.field());
  if (p == n) return Subspace::zero(n, v.field());
  Eigen::HouseholderQR<Matrix> qr(v.basis());
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return Subspace::from_orthonormal(q.rightCols(n - p), v.field());
}

Vector project_vector(const Subspace& w, const Vector& x) {
  if (x.size() != w.ambient())
    throw std::invalid_argument("vector/ambient dimension mismatch");
  if (w.dim() == 0) return Vector::Zero(x.size());
  return w.basis() * (w.basis().adjoint() * x);
}

namespace {

// Span of a matrix whose columns came from unit vectors: a direction counts
// only when it exceeds the angle tolerance, the same scale at which
// contains() declares containment. A relative cut would keep pure roundoff
// when everything is numerically zero.
Subspace unit_scale_span(const Matrix& m, Field field, const Tolerances& tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const int n = static_cast<int>(m.rows());
  const double cut =
      std::max(tol.angle_tol,
               tol.effective_rank_rel(n, static_cast<int>(m.cols())) *
                   (sv.size() > 0 ? sv(0) : 0.0));
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (rank == 0) return Subspace::zero(n, field);
  return Subspace::from_orthonormal(svd.matrixU().leftCols(rank), field);
}

}  // namespace

Subspace project_subspace(const Subspace& w, const Subspace& v,
                          const Tolerances& tol) {
  detail::require_compatible(v, w);
  if (v.dim() == 0 || w.dim() == 0) return Subspace::zero(v.ambient(), v.field());
  Matrix proj = w.basis() * (w.basis().adjoint() * v.basis());
  return unit_scale_span(proj, v.field(), tol);
}

int intersection_dim(const Subspace& v, const Subspace& w, const Tolerances& tol) {
  return principal_decomposition(v, w, tol).common_dim(tol.angle_tol);
}

Subspace intersection(const Subspace& v, const Subspace& w, const Tolerances& tol) {
  PrincipalDecomposition pd = principal_decomposition(v, w, tol);
  const int k = pd.common_dim(tol.angle_tol);
  if (k == 0) return Subspace::zero(v.ambient(), v.field());
  // e_i and f_i agree within angle_tol for the zero angles; averaging keeps
  // the result inside both spans to first order.
  Matrix mid = 0.5 * (pd.e.leftCols(k) + pd.f.leftCols(k));
  return Subspace::from_spanning(mid, v.field(), tol);
}

bool contains(const Subspace& w, const Subspace& v, const Tolerances& tol) {
  return intersection_dim(v, w, tol) == v.dim();
}

bool same_span(const Subspace& v, const Subspace& w, const Tolerances& tol) {
  return v.dim() == w.dim() && contains(w, v, tol);
}

bool is_partially_orthogonal(const Subspace& v, const Subspace& w,
                             const Tolerances& tol) {
  detail::require_compatible(v, w);
  if (v.dim() > w.dim()) return true;
  if (v.dim() == 0) return false;
  RealVector angles = principal_angles(v, w, tol);
  if (angles.size() == 0) return false;
  return angles(angles.size() - 1) >= M_PI_2 - tol.angle_tol;
}

bool is_fully_orthogonal(const Subspace& v, const Subspace& w,
                         const Tolerances& tol) {
  detail::require_compatible(v, w);
  if (v.dim() == 0 || w.dim() == 0) return true;
  // All angles right iff the largest cross correlation vanishes.
  Matrix m = v.basis().adjoint() * w.basis();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0) <= tol.angle_tol;
}

Subspace projection_subspace(const Subspace& w, const Subspace& v,
                             const Tolerances& tol) {
  detail::require_compatible(v, w);
  const int m = std::min(v.dim(), w.dim());
  if (m == w.dim()) return w;
  if (m == 0) return Subspace::zero(w.ambient(), w.field());
  PrincipalDecomposition pd = principal_decomposition(v, w, tol);
  return Subspace::from_orthonormal(pd.f.leftCols(m), w.field());
}

Subspace complement_within(const Subspace& outer, const Subspace& inner,
                           const Tolerances& tol) {
  detail::require_compatible(outer, inner);
  if (!contains(outer, inner, tol))
    throw std::invalid_argument("inner subspace not contained in outer");
  if (inner.dim() == 0) return outer;
  Matrix residual =
      outer.basis() - inner.basis() * (inner.basis().adjoint() * outer.basis());
  // Nested inputs leave residual directions that are unit scale or pure
  // roundoff, never in between.
  return unit_scale_span(residual, outer.field(), tol);
}

Subspace realify(const Subspace& v) {
  if (v.field() != Field::Complex)
    throw std::invalid_argument("realify expects a complex subspace");
  const int n = v.ambient();
  const int p = v.dim();
  Matrix out(2 * n, 2 * p);
  out.setZero();
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < n; ++k) {
      const Complex z = v.basis()(k, j);
      out(2 * k, 2 * j) = z.real();
      out(2 * k + 1, 2 * j) = z.imag();
      // i*z interleaved: (-Im z, Re z)
      out(2 * k, 2 * j + 1) = -z.imag();
      out(2 * k + 1, 2 * j + 1) = z.real();
    }
  }
  return Subspace::from_orthonormal(std::move(out), Field::Real);
}

Subspace direct_sum(const Subspace& v, const Subspace& x, const Tolerances& tol) {
  detail::require_compatible(v, x);
  if (v.dim() == 0) return x;
  if (x.dim() == 0) return v;
  Matrix cross = v.basis().adjoint() * x.basis();
  Eigen::JacobiSVD<Matrix> svd(cross);
  if (svd.singularValues()(0) > tol.angle_tol)
    throw std::invalid_argument("direct_sum of non-orthogonal subspaces");
  Matrix joined(v.ambient(), v.dim() + x.dim());
  joined << v.basis(), x.basis();
  // Re-orthonormalize so the orthonormality invariant holds even when the
  // summands are orthogonal only to angle_tol.
  Eigen::HouseholderQR<Matrix> qr(joined);
  Matrix q = qr.householderQ() * Matrix::Identity(v.ambient(), joined.cols());
  return Subspace::from_orthonormal(std::move(q), v.field());
}

}  // namespace subgeo
