#include "subgeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subgeo/principal.hpp"

namespace subgeo {

namespace {

double sum_sq(const RealVector& a) { return a.squaredNorm(); }

double sum_sin_sq(const RealVector& a) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::sin(a(i)) * std::sin(a(i));
  return s;
}

double sum_half_sin_sq(const RealVector& a) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::sin(a(i) / 2) * std::sin(a(i) / 2);
  return s;
}

// log prod cos(a_i), accumulated through log1p(-sin^2) so the product-angle
// kinds stay accurate near 0 where the plain product rounds to 1; -inf at a
// right angle.
double log_prod_cos(const RealVector& a) {
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double s = std::min(1.0, std::abs(std::sin(a(i))));
    if (s >= 1.0) return -std::numeric_limits<double>::infinity();
    sum += 0.5 * std::log1p(-s * s);
  }
  return sum;
}

double max_angle(const RealVector& a) { return a.size() ? a(a.size() - 1) : 0.0; }

}  // namespace

MetricFamily family_of(Metric kind) {
  switch (kind) {
    case Metric::Geodesic:
    case Metric::ChordalFrobenius:
    case Metric::ProjectionFrobenius:
      return MetricFamily::L2;
    case Metric::FubiniStudy:
    case Metric::ChordalWedge:
    case Metric::BinetCauchy:
      return MetricFamily::Wedge;
    default:
      return MetricFamily::Max;
  }
}

std::string metric_name(Metric kind) {
  switch (kind) {
    case Metric::Geodesic: return "d_g";
    case Metric::ChordalFrobenius: return "d_cF";
    case Metric::ProjectionFrobenius: return "d_pF";
    case Metric::FubiniStudy: return "d_FS";
    case Metric::ChordalWedge: return "d_cwedge";
    case Metric::BinetCauchy: return "d_BC";
    case Metric::Asimov: return "d_A";
    case Metric::ChordalTwo: return "d_c2";
    case Metric::ProjectionTwo: return "d_p2";
  }
  return "?";
}

bool metric_from_name(const std::string& name, Metric* out) {
  for (Metric k : kAllMetrics) {
    if (metric_name(k) == name) {
      *out = k;
      return true;
    }
  }
  if (name == "d_cw") {  // short alias
    *out = Metric::ChordalWedge;
    return true;
  }
  return false;
}

double diameter(Metric kind, int p) {
  if (p < 0) throw std::invalid_argument("negative dimension");
  if (p == 0) return 0.0;
  switch (kind) {
    case Metric::Geodesic: return M_PI_2 * std::sqrt(double(p));
    case Metric::ChordalFrobenius: return std::sqrt(2.0 * p);
    case Metric::ProjectionFrobenius: return std::sqrt(double(p));
    case Metric::FubiniStudy: return M_PI_2;
    case Metric::ChordalWedge: return std::sqrt(2.0);
    case Metric::BinetCauchy: return 1.0;
    case Metric::Asimov: return M_PI_2;
    case Metric::ChordalTwo: return std::sqrt(2.0);
    case Metric::ProjectionTwo: return 1.0;
  }
  return 0.0;
}

double asym_distance_from_angles(Metric kind, int p, int q, int ambient,
                                 const RealVector& angles, InfConvention conv) {
  if (p == 0) return 0.0;
  if (p > q) {
    switch (conv) {
      case InfConvention::DimensionDiameter: return diameter(kind, p);
      case InfConvention::AmbientDiameter: return diameter(kind, ambient);
      case InfConvention::Unbounded:
        return std::numeric_limits<double>::infinity();
    }
  }
  switch (kind) {
    case Metric::Geodesic: return std::sqrt(sum_sq(angles));
    case Metric::ChordalFrobenius: return 2.0 * std::sqrt(sum_half_sin_sq(angles));
    case Metric::ProjectionFrobenius: return std::sqrt(sum_sin_sq(angles));
    case Metric::FubiniStudy: {
      const double lc = log_prod_cos(angles);
      return std::atan2(std::sqrt(std::max(0.0, -std::expm1(2.0 * lc))),
                        std::exp(lc));
    }
    case Metric::ChordalWedge:
      return std::sqrt(std::max(0.0, -2.0 * std::expm1(log_prod_cos(angles))));
    case Metric::BinetCauchy:
      return std::sqrt(std::max(0.0, -std::expm1(2.0 * log_prod_cos(angles))));
    case Metric::Asimov: return max_angle(angles);
    case Metric::ChordalTwo: return 2.0 * std::sin(max_angle(angles) / 2);
    case Metric::ProjectionTwo: return std::sin(max_angle(angles));
  }
  return 0.0;
}

double asym_distance(Metric kind, const Subspace& v, const Subspace& w,
                     InfConvention conv, const Tolerances& tol) {
  detail::require_compatible(v, w);
  if (v.dim() == 0) return 0.0;
  if (v.dim() > w.dim())  // angles not needed on this branch
    return asym_distance_from_angles(kind, v.dim(), w.dim(), v.ambient(), {}, conv);
  RealVector angles = principal_angles(v, w, tol);
  return asym_distance_from_angles(kind, v.dim(), w.dim(), v.ambient(), angles, conv);
}

bool sym_mode_is_metric(SymMode mode) { return mode != SymMode::Min; }

double symmetrize(Metric kind, const Subspace& v, const Subspace& w, SymMode mode,
                  double s, const Tolerances& tol) {
  detail::require_compatible(v, w);
  RealVector angles;  // shared between both directions
  if (std::min(v.dim(), w.dim()) > 0) angles = principal_angles(v, w, tol);
  const double vw =
      asym_distance_from_angles(kind, v.dim(), w.dim(), v.ambient(), angles);
  const double wv =
      asym_distance_from_angles(kind, w.dim(), v.dim(), v.ambient(), angles);
  switch (mode) {
    case SymMode::Max: return std::max(vw, wv);
    case SymMode::Min: return std::min(vw, wv);
    case SymMode::PNorm:
      if (s < 1.0) throw std::invalid_argument("p-norm symmetrization needs s >= 1");
      return std::pow(std::pow(vw, s) + std::pow(wv, s), 1.0 / s);
  }
  return 0.0;
}

std::string legacy_name(LegacyMetric kind) {
  switch (kind) {
    case LegacyMetric::Symmetric: return "d_s";
    case LegacyMetric::ExtendedProjectionF: return "d_pF_ext";
    case LegacyMetric::Directional: return "d_dir";
    case LegacyMetric::ContainmentGap: return "gap";
    case LegacyMetric::SymmetricGap: return "gap_sym";
    case LegacyMetric::EqualDimFubiniStudy: return "d_FS_eq";
    case LegacyMetric::NaiveProjectionF: return "d_pF_naive";
    case LegacyMetric::MaxCorrelation: return "maxcorr";
    case LegacyMetric::Martin: return "martin";
  }
  return "?";
}

bool legacy_from_name(const std::string& name, LegacyMetric* out) {
  for (LegacyMetric k : kAllLegacyMetrics) {
    if (legacy_name(k) == name) {
      *out = k;
      return true;
    }
  }
  return false;
}

TriangleStatus legacy_triangle_status(LegacyMetric kind) {
  switch (kind) {
    case LegacyMetric::Directional: return TriangleStatus::Unknown;
    case LegacyMetric::NaiveProjectionF:
    case LegacyMetric::MaxCorrelation:
    case LegacyMetric::Martin:
      return TriangleStatus::Fails;
    default:
      return TriangleStatus::Holds;
  }
}

double legacy_distance_from_angles(LegacyMetric kind, int p, int q,
                                   const RealVector& angles) {
  const int m = std::min(p, q);
  switch (kind) {
    case LegacyMetric::Symmetric:
      return std::sqrt(std::abs(p - q) + sum_sin_sq(angles));
    case LegacyMetric::ExtendedProjectionF:
      return std::sqrt(std::abs(p - q) / 2.0 + sum_sin_sq(angles));
    case LegacyMetric::Directional:
      return std::sqrt(std::max(0, p - q) + sum_sin_sq(angles));
    case LegacyMetric::ContainmentGap:
      if (p == 0) return 0.0;
      return p <= q ? std::sin(max_angle(angles)) : 1.0;
    case LegacyMetric::SymmetricGap: {
      if (p == 0 && q == 0) return 0.0;
      return p == q ? std::sin(max_angle(angles)) : 1.0;
    }
    case LegacyMetric::EqualDimFubiniStudy: {
      if (p != q) return M_PI_2;
      if (p == 0) return 0.0;
      const double lc = log_prod_cos(angles);
      return std::atan2(std::sqrt(std::max(0.0, -std::expm1(2.0 * lc))),
                        std::exp(lc));
    }
    case LegacyMetric::NaiveProjectionF:
      return std::sqrt(sum_sin_sq(angles));
    case LegacyMetric::MaxCorrelation:
      return m == 0 ? 1.0 : std::sin(angles(0));
    case LegacyMetric::Martin: {
      if (p != q) return std::numeric_limits<double>::infinity();
      if (p == 0) return 0.0;
      // cos(theta) <= angle_tol means theta is within angle_tol of a right
      // angle; the double closest to pi/2 still has cosine ~6e-17, so a
      // plain sign test would never diverge.
      const double right_window = Tolerances().angle_tol;
      double sum = 0.0;
      for (int i = 0; i < angles.size(); ++i) {
        const double c = std::cos(angles(i));
        if (c <= right_window) return std::numeric_limits<double>::infinity();
        sum -= 2.0 * std::log(c);
      }
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

double legacy_distance(LegacyMetric kind, const Subspace& v, const Subspace& w,
                       const Tolerances& tol) {
  detail::require_compatible(v, w);
  RealVector angles;
  if (std::min(v.dim(), w.dim()) > 0) angles = principal_angles(v, w, tol);
  return legacy_distance_from_angles(kind, v.dim(), w.dim(), angles);
}

namespace {

void require_nested(const Subspace& outer, const Subspace& inner,
                    const Tolerances& tol, const char* what) {
  detail::require_compatible(outer, inner);
  if (!contains(outer, inner, tol)) throw std::invalid_argument(what);
}

}  // namespace

bool target_shrink_preserves_dg(const Subspace& v, const Subspace& w,
                                const Subspace& w_sub, const Tolerances& tol) {
  detail::require_compatible(v, w);
  require_nested(w, w_sub, tol, "w_sub must lie inside w");
  const int p = v.dim();
  if (p > w.dim()) return true;
  if (p <= w_sub.dim()) return contains(w_sub, project_subspace(w, v, tol), tol);
  return is_fully_orthogonal(v, w, tol);
}

bool source_shrink_preserves_dg(const Subspace& v, const Subspace& v_sub,
                                const Subspace& w, const Tolerances& tol) {
  detail::require_compatible(v, w);
  require_nested(v, v_sub, tol, "v_sub must lie inside v");
  if (v.dim() > w.dim()) return v_sub.dim() == v.dim();
  return contains(w, complement_within(v, v_sub, tol), tol);
}

bool target_shrink_preserves_dfs(const Subspace& v, const Subspace& w,
                                 const Subspace& w_sub, const Tolerances& tol) {
  detail::require_compatible(v, w);
  require_nested(w, w_sub, tol, "w_sub must lie inside w");
  return is_partially_orthogonal(v, w, tol) ||
         contains(w_sub, project_subspace(w, v, tol), tol);
}

bool source_shrink_preserves_dfs(const Subspace& v, const Subspace& v_sub,
                                 const Subspace& w, const Tolerances& tol) {
  detail::require_compatible(v, w);
  require_nested(v, v_sub, tol, "v_sub must lie inside v");
  return is_partially_orthogonal(v_sub, w, tol) ||
         contains(w, complement_within(v, v_sub, tol), tol);
}

}  // namespace subgeo
