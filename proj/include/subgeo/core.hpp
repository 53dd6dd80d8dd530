#pragma once

#include <complex>
#include <stdexcept>
#include <Eigen/Dense>

namespace subgeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Field { Real, Complex };

// Numerical policy shared by the whole library.
//   rank_rel  - relative singular value cutoff for rank decisions; 0 means
//               the automatic choice max(rows, cols) * machine epsilon.
//   angle_tol - angles below this count as zero, angles above pi/2 - angle_tol
//               count as right angles.
//   dist_tol  - distances below this count as zero.
struct Tolerances {
  double rank_rel = 0.0;
  double angle_tol = 1e-8;
  double dist_tol = 1e-9;

  double effective_rank_rel(int rows, int cols) const;
};

// A linear subspace of F^n, held as an orthonormal basis (n x p matrix).
// p = 0 is the zero subspace {0}; p = n is the whole space.
// Real-field subspaces keep exactly zero imaginary parts.
class Subspace {
 public:
  Subspace(int ambient, Field field);  // the zero subspace

  static Subspace zero(int ambient, Field field);
  static Subspace full(int ambient, Field field);
  // Columns must already be orthonormal (checked to 1e-12).
  static Subspace from_orthonormal(Matrix basis, Field field);
  // Orthonormalizes the columns and drops rank-deficient directions.
  static Subspace from_spanning(const Matrix& spanning, Field field,
                                const Tolerances& tol = {});

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  Field field() const { return field_; }
  const Matrix& basis() const { return basis_; }

 private:
  int ambient_;
  Field field_;
  Matrix basis_;
};

// Orthogonal complement within the ambient space.
Subspace complement(const Subspace& v);

// Orthogonal projection of x onto w.
Vector project_vector(const Subspace& w, const Vector& x);

// Subspace spanned by the projections of v's basis onto w (the image P_w(v)).
Subspace project_subspace(const Subspace& w, const Subspace& v,
                          const Tolerances& tol = {});

// dim(v intersect w), counted as the number of principal angles below angle_tol.
int intersection_dim(const Subspace& v, const Subspace& w,
                     const Tolerances& tol = {});

// Basis for v intersect w.
Subspace intersection(const Subspace& v, const Subspace& w,
                      const Tolerances& tol = {});

// True iff v is contained in w.
bool contains(const Subspace& w, const Subspace& v, const Tolerances& tol = {});

// True iff the spans are equal.
bool same_span(const Subspace& v, const Subspace& w, const Tolerances& tol = {});

// True iff v has a nonzero vector orthogonal to w, i.e. iff dim v > dim w or
// the largest principal angle is a right angle.
bool is_partially_orthogonal(const Subspace& v, const Subspace& w,
                             const Tolerances& tol = {});

// True iff every principal angle is a right angle (v and w fully orthogonal).
bool is_fully_orthogonal(const Subspace& v, const Subspace& w,
                         const Tolerances& tol = {});

// The min(p,q)-dimensional subspace of w spanned by its leading principal
// vectors with respect to v; it contains the projection of v onto w.
// For dim v >= dim w this is w itself.
Subspace projection_subspace(const Subspace& w, const Subspace& v,
                             const Tolerances& tol = {});

// Orthogonal complement of inner within outer (inner must be contained in outer).
Subspace complement_within(const Subspace& outer, const Subspace& inner,
                           const Tolerances& tol = {});

// View of a complex subspace as a real one of twice the dimension, in
// interleaved coordinates (x1, y1, x2, y2, ...); each basis vector v
// contributes the pair (v, iv).
Subspace realify(const Subspace& v);

// Internal direct sum of orthogonal subspaces (orthogonality checked).
Subspace direct_sum(const Subspace& v, const Subspace& x,
                    const Tolerances& tol = {});

namespace detail {
void require_compatible(const Subspace& v, const Subspace& w);
}

}  // namespace subgeo
