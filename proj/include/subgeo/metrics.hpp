#pragma once

#include <string>

#include "subgeo/core.hpp"

namespace subgeo {

// The nine asymmetric distances. Writing t1..tp for the principal angles of
// (V, W) with p = dim V <= dim W, each kind evaluates its formula on them,
// returns 0 for p = 0 and its diameter when dim V > dim W:
//   Geodesic            sqrt(sum t_i^2)            diameter (pi/2) sqrt(p)
//   ChordalFrobenius    2 sqrt(sum sin^2(t_i/2))   diameter sqrt(2p)
//   ProjectionFrobenius sqrt(sum sin^2 t_i)        diameter sqrt(p)
//   FubiniStudy         arccos(prod cos t_i)       diameter pi/2
//   ChordalWedge        sqrt(2 - 2 prod cos t_i)   diameter sqrt(2)
//   BinetCauchy         sqrt(1 - prod cos^2 t_i)   diameter 1
//   Asimov              t_p                        diameter pi/2
//   ChordalTwo          2 sin(t_p/2)               diameter sqrt(2)
//   ProjectionTwo       sin t_p                    diameter 1
enum class Metric {
  Geodesic,
  ChordalFrobenius,
  ProjectionFrobenius,
  FubiniStudy,
  ChordalWedge,
  BinetCauchy,
  Asimov,
  ChordalTwo,
  ProjectionTwo,
};

enum class MetricFamily { L2, Wedge, Max };

inline constexpr Metric kAllMetrics[] = {
    Metric::Geodesic,      Metric::ChordalFrobenius, Metric::ProjectionFrobenius,
    Metric::FubiniStudy,   Metric::ChordalWedge,     Metric::BinetCauchy,
    Metric::Asimov,        Metric::ChordalTwo,       Metric::ProjectionTwo};

MetricFamily family_of(Metric kind);
std::string metric_name(Metric kind);     // d_g, d_cF, ...
bool metric_from_name(const std::string& name, Metric* out);

// Largest possible value of the kind on a p-dimensional first argument
// (0 when p = 0).
double diameter(Metric kind, int p);

// Value assigned when dim V > dim W (the empty infimum). The default takes the
// supremum of the value interval [0, diameter(kind, dim V)]; the alternatives
// use [0, diameter(kind, ambient)] or [0, +infinity].
enum class InfConvention { DimensionDiameter, AmbientDiameter, Unbounded };

double asym_distance(Metric kind, const Subspace& v, const Subspace& w,
                     InfConvention conv = InfConvention::DimensionDiameter,
                     const Tolerances& tol = {});

// Same value computed from a precomputed angle vector (the min(p,q) principal
// angles of (V, W)); avoids repeated decompositions in bulk checks.
double asym_distance_from_angles(Metric kind, int p, int q, int ambient,
                                 const RealVector& angles,
                                 InfConvention conv = InfConvention::DimensionDiameter);

enum class SymMode { Max, Min, PNorm };

// Max and PNorm (s >= 1) symmetrizations are metrics; Min fails the triangle
// inequality and is provided for comparison only.
bool sym_mode_is_metric(SymMode mode);

double symmetrize(Metric kind, const Subspace& v, const Subspace& w,
                  SymMode mode, double s = 2.0, const Tolerances& tol = {});

// Older distances kept for comparison; t1..tm are the min(p,q) principal
// angles, and the dimension gap enters explicitly where shown:
//   Symmetric            sqrt(|p-q| + sum sin^2 t_i)
//   ExtendedProjectionF  sqrt(|p-q|/2 + sum sin^2 t_i)
//   Directional          sqrt(max(0, p-q) + sum sin^2 t_i)
//   ContainmentGap       sin t_m if p <= q, else 1
//   SymmetricGap         max of ContainmentGap both ways
//   EqualDimFubiniStudy  arccos(prod cos t_i) if p = q, else pi/2
//   NaiveProjectionF     sqrt(sum sin^2 t_i)
//   MaxCorrelation       sin t_1 (1 when min(p,q) = 0)
//   Martin               sqrt(-log prod cos^2 t_i) if p = q, else +inf
// Martin is +inf whenever some angle is right; both MaxCorrelation and Martin
// vanish on pairs with equal spans only in the trivial sense and are not
// metrics; NaiveProjectionF fails the triangle inequality across dimensions.
enum class LegacyMetric {
  Symmetric,
  ExtendedProjectionF,
  Directional,
  ContainmentGap,
  SymmetricGap,
  EqualDimFubiniStudy,
  NaiveProjectionF,
  MaxCorrelation,
  Martin,
};

inline constexpr LegacyMetric kAllLegacyMetrics[] = {
    LegacyMetric::Symmetric,          LegacyMetric::ExtendedProjectionF,
    LegacyMetric::Directional,        LegacyMetric::ContainmentGap,
    LegacyMetric::SymmetricGap,       LegacyMetric::EqualDimFubiniStudy,
    LegacyMetric::NaiveProjectionF,   LegacyMetric::MaxCorrelation,
    LegacyMetric::Martin,
};

std::string legacy_name(LegacyMetric kind);
bool legacy_from_name(const std::string& name, LegacyMetric* out);

enum class TriangleStatus { Holds, Fails, Unknown };
TriangleStatus legacy_triangle_status(LegacyMetric kind);

double legacy_distance(LegacyMetric kind, const Subspace& v, const Subspace& w,
                       const Tolerances& tol = {});
double legacy_distance_from_angles(LegacyMetric kind, int p, int q,
                                   const RealVector& angles);

// Closed-form predicates for when shrinking one side leaves the distance
// unchanged. w_sub must lie inside w, v_sub inside v (checked).
//
// Geodesic kind, d_g(v, w_sub) = d_g(v, w) iff
//   dim v <= dim w_sub and P_w(v) lies inside w_sub, or
//   dim w_sub < dim v <= dim w and v is fully orthogonal to w, or
//   dim v > dim w.
bool target_shrink_preserves_dg(const Subspace& v, const Subspace& w,
                                const Subspace& w_sub,
                                const Tolerances& tol = {});
// Geodesic kind, d_g(v_sub, w) = d_g(v, w) iff
//   dim v <= dim w and the complement of v_sub within v lies inside w, or
//   v_sub = v and dim v > dim w.
bool source_shrink_preserves_dg(const Subspace& v, const Subspace& v_sub,
                                const Subspace& w,
                                const Tolerances& tol = {});
// Fubini-Study kind, d_FS(v, w_sub) = d_FS(v, w) iff
//   v partially orthogonal to w, or P_w(v) lies inside w_sub.
bool target_shrink_preserves_dfs(const Subspace& v, const Subspace& w,
                                 const Subspace& w_sub,
                                 const Tolerances& tol = {});
// Fubini-Study kind, d_FS(v_sub, w) = d_FS(v, w) iff
//   v_sub partially orthogonal to w, or the complement of v_sub within v
//   lies inside w.
bool source_shrink_preserves_dfs(const Subspace& v, const Subspace& v_sub,
                                 const Subspace& w,
                                 const Tolerances& tol = {});

}  // namespace subgeo
