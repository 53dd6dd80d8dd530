#pragma once

#include <vector>

#include "subgeo/core.hpp"
#include "subgeo/multivector.hpp"

namespace subgeo {

// The asymmetric angle of v with w, in [0, pi/2]: the angle whose cosine is
// the norm ratio |P_w A| / |A| for a blade A representing v. Five independent
// computations of the same number:
//
//   principal   arccos of the product of principal-angle cosines
//               (0 when dim v = 0, pi/2 when dim v > dim w)
//   contraction |contraction(A, B)| / (|A| |B|) on blades
//   gram        det(C^H B^-1 C) / det(A) on raw spanning sets, where A, B are
//               the Gram matrices of the inputs and C the cross Gram
//   projection_det  det(P^H P) with P the matrix of the projection v -> w in
//               orthonormal bases (|det P| when dims agree)
//   multivector_projection  |project_multivector(w, A)| for the unit blade A

double angle_via_principal(const Subspace& v, const Subspace& w,
                           const Tolerances& tol = {});

double angle_via_contraction(const Multivector& a, const Multivector& b);

// Raw (not necessarily orthonormal) spanning sets, full column rank required.
double angle_via_gram(const Matrix& v_raw, const Matrix& w_raw,
                      const Tolerances& tol = {});

double angle_via_projection_det(const Subspace& v, const Subspace& w);

double angle_via_multivector_projection(const Subspace& v, const Subspace& w);

// Volume contraction ratio of projecting v onto w: cos(angle) over the reals,
// cos^2(angle) over the complexes (where the underlying real volume doubles).
double projection_factor(const Subspace& v, const Subspace& w,
                         const Tolerances& tol = {});

// Binet-Cauchy coordinate split. beta is an orthogonal basis of the ambient
// space whose first dim(w) vectors span w. One term per coordinate
// p-subspace u not inside w: its projection factor with v. The factors,
// squared over the reals and taken plainly over the complexes, sum to
// d_BC(v, w)^2.
struct BcTerm {
  std::vector<int> indices;  // which beta columns span u (ascending)
  double factor;
};
struct BcDecomposition {
  std::vector<BcTerm> terms;
  double total;
};
BcDecomposition bc_coordinate_decomposition(const Subspace& v, const Subspace& w,
                                            const Matrix& beta,
                                            const Tolerances& tol = {});

}  // namespace subgeo
