#pragma once

#include "subgeo/core.hpp"

namespace subgeo {

// Principal angles and vectors of a pair (v, w), dim v = p, dim w = q,
// m = min(p, q).
//   angles - m values, ascending in [0, pi/2].
//   e      - n x p orthonormal basis of v; column i < m pairs with f column i.
//   f      - n x q orthonormal basis of w; trailing columns (i >= m) complete
//            the principal basis without a partner.
// Pairs are phase-aligned: <e_i, f_i> = cos(angles_i) >= 0.
struct PrincipalDecomposition {
  RealVector angles;
  Matrix e;
  Matrix f;

  int common_dim(double angle_tol) const;  // number of zero angles
};

// Two-sided computation: arccos of the singular values of E^H F, replaced by
// arcsin of the projected residual norm when the cosine exceeds 1/sqrt(2), so
// small angles keep full accuracy.
PrincipalDecomposition principal_decomposition(const Subspace& v,
                                               const Subspace& w,
                                               const Tolerances& tol = {});

// Just the angles.
RealVector principal_angles(const Subspace& v, const Subspace& w,
                            const Tolerances& tol = {});

// Angle between single vectors in [0, pi]: arccos(Re<v,w> / (|v||w|)).
// Conventions for zero vectors: theta(0, w) = 0, theta(v, 0) = pi/2 for v != 0.
double vector_angle(const Vector& v, const Vector& w);

}  // namespace subgeo
