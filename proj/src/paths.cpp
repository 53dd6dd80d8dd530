#include "subgeo/paths.hpp"

#include <algorithm>
#include <cmath>

#include "subgeo/angle.hpp"
#include "subgeo/principal.hpp"

namespace subgeo {

namespace {

// Validation nets use a looser tolerance than measurements; they only need to
// catch structural mistakes.
Tolerances loose(const Tolerances& tol) {
  Tolerances t = tol;
  t.angle_tol = std::max(tol.angle_tol * 100, 1e-6);
  return t;
}

void require_path_metric(Metric kind) {
  if (family_of(kind) == MetricFamily::Max)
    throw std::invalid_argument(
        "max-family kinds induce no path-length geometry");
}

Subspace leg_value(const Path::Leg& leg, double t) {
  if (const auto* c = std::get_if<ConstantLeg>(&leg)) return c->value;
  const auto& r = std::get<RotationLeg>(leg);
  return Subspace::from_spanning(r.frame_at(t), r.field);
}

double leg_t0(const Path::Leg& leg) {
  return std::visit([](const auto& l) { return l.t0; }, leg);
}
double leg_t1(const Path::Leg& leg) {
  return std::visit([](const auto& l) { return l.t1; }, leg);
}

// Rotation partners g_i ~ (f_i - P_v f_i) / sin(angle_i); angles below the
// cutoff are frozen (no rotation) because the normalized partner direction
// loses accuracy like eps / sin(angle).
void rotation_frame(const Subspace& v, const PrincipalDecomposition& pd, int m,
                    double cutoff, Matrix* g, RealVector* theta) {
  const int n = v.ambient();
  *g = Matrix::Zero(n, v.dim());
  *theta = RealVector::Zero(v.dim());
  Matrix residual = pd.f.leftCols(m) -
                    v.basis() * (v.basis().adjoint() * pd.f.leftCols(m));
  for (int i = 0; i < m; ++i) {
    if (pd.angles(i) <= cutoff) continue;
    (*theta)(i) = pd.angles(i);
    g->col(i) = residual.col(i) / residual.col(i).norm();
  }
}

}  // namespace

Matrix RotationLeg::frame_at(double t) const {
  const double s = t1 == t0 ? 0.0 : (t - t0) / (t1 - t0);
  const int p = static_cast<int>(e.cols());
  const int k = static_cast<int>(static_part.cols());
  Matrix frame(e.rows(), p + k);
  for (int i = 0; i < p; ++i) {
    if (theta(i) == 0.0) {
      frame.col(i) = e.col(i);
    } else {
      frame.col(i) = std::cos(s * theta(i)) * e.col(i) +
                     std::sin(s * theta(i)) * g.col(i);
    }
  }
  if (k > 0) frame.rightCols(k) = static_part;
  return frame;
}

double RotationLeg::rotation_length() const { return theta.norm(); }

Path::Path(Metric kind, Topology topology, std::vector<Leg> legs,
           std::vector<PathEvent> events)
    : metric_(kind), topology_(topology), legs_(std::move(legs)),
      events_(std::move(events)) {
  require_path_metric(kind);
  if (legs_.empty()) throw std::invalid_argument("path needs at least one leg");
  const Tolerances net = loose({});
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    if (!(leg_t0(legs_[i]) < leg_t1(legs_[i])))
      throw std::invalid_argument("leg interval is empty");
    if (i + 1 < legs_.size()) {
      if (leg_t1(legs_[i]) != leg_t0(legs_[i + 1]))
        throw std::invalid_argument("legs are not contiguous");
    }
  }
  for (const PathEvent& ev : events_) {
    if (ev.expand ? ev.after.dim() <= ev.before.dim()
                  : ev.after.dim() >= ev.before.dim())
      throw std::invalid_argument("event does not change dimension the stated way");
    const Subspace& small = ev.expand ? ev.before : ev.after;
    const Subspace& large = ev.expand ? ev.after : ev.before;
    if (!contains(large, small, net))
      throw std::invalid_argument("event sides are not nested");
    bool at_boundary = false;
    for (const Leg& leg : legs_) {
      if (leg_t1(leg) == ev.t) {
        at_boundary = true;
        if (!same_span(leg_value(leg, ev.t), ev.before, net))
          throw std::invalid_argument("event does not continue the left leg");
      }
      if (leg_t0(leg) == ev.t) {
        at_boundary = true;
        if (!same_span(leg_value(leg, ev.t), ev.after, net))
          throw std::invalid_argument("event does not continue into the right leg");
      }
    }
    if (!at_boundary)
      throw std::invalid_argument("event not at a leg boundary");
  }
  for (PathEvent& ev : events_)
    ev.penalty = ev.expand ? 0.0 : diameter(metric_, ev.before.dim());
}

double Path::t_begin() const { return leg_t0(legs_.front()); }
double Path::t_end() const { return leg_t1(legs_.back()); }

Subspace Path::at(double t) const {
  if (t < t_begin() || t > t_end())
    throw std::invalid_argument("parameter outside the path domain");
  for (const PathEvent& ev : events_) {
    if (t == ev.t) {
      const Subspace& large = ev.expand ? ev.after : ev.before;
      const Subspace& small = ev.expand ? ev.before : ev.after;
      return topology_ == Topology::Backward ? large : small;
    }
  }
  for (const Leg& leg : legs_)
    if (t >= leg_t0(leg) && t <= leg_t1(leg)) return leg_value(leg, t);
  throw std::logic_error("parameter not covered by any leg");
}

double Path::exact_length() const {
  double len = 0.0;
  for (const Leg& leg : legs_)
    if (const auto* r = std::get_if<RotationLeg>(&leg)) len += r->rotation_length();
  for (const PathEvent& ev : events_) len += ev.penalty;
  return len;
}

double Path::sampled_length(int samples) const {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const double a = t_begin();
  const double b = t_end();
  double len = 0.0;
  Subspace prev = at(a);
  for (int i = 1; i < samples; ++i) {
    const double t = i == samples - 1 ? b : a + (b - a) * i / (samples - 1);
    Subspace cur = at(t);
    len += asym_distance(metric_, prev, cur);
    prev = std::move(cur);
  }
  return len;
}

bool Path::has_contraction() const {
  for (const PathEvent& ev : events_)
    if (!ev.expand) return true;
  return false;
}

PathBuilder::PathBuilder(Metric kind, Topology topology, double t_start,
                         Subspace start)
    : metric_(kind), topology_(topology), t_(t_start), current_(std::move(start)) {
  require_path_metric(kind);
}

PathBuilder& PathBuilder::hold_until(double t) {
  if (!(t > t_)) throw std::invalid_argument("holds must advance the parameter");
  legs_.push_back(ConstantLeg{t_, t, current_});
  t_ = t;
  return *this;
}

PathBuilder& PathBuilder::jump_to(const Subspace& next) {
  if (next.dim() == current_.dim())
    throw std::invalid_argument("jump must change the dimension");
  events_.push_back(PathEvent{t_, next.dim() > current_.dim(), current_, next});
  current_ = next;
  return *this;
}

Path PathBuilder::build() && {
  return Path(metric_, topology_, std::move(legs_), std::move(events_));
}

namespace {

constexpr double kAngleFreezeCutoff = 1e-8;

RotationLeg make_rotation_leg(const Subspace& v, const PrincipalDecomposition& pd,
                              int pair_count, Matrix static_part,
                              const Tolerances& tol) {
  RotationLeg leg;
  leg.t0 = 0.0;
  leg.t1 = 1.0;
  leg.field = v.field();
  leg.e = pd.e;
  leg.static_part = std::move(static_part);
  rotation_frame(v, pd, pair_count,
                 std::max(tol.angle_tol, kAngleFreezeCutoff), &leg.g, &leg.theta);
  return leg;
}

}  // namespace

Path grassmannian_geodesic(const Subspace& v, const Subspace& w,
                           const Tolerances& tol) {
  detail::require_compatible(v, w);
  if (v.dim() != w.dim())
    throw std::invalid_argument("rotation paths need equal dimensions");
  PrincipalDecomposition pd = principal_decomposition(v, w, tol);
  RotationLeg leg = make_rotation_leg(v, pd, v.dim(), Matrix(v.ambient(), 0), tol);
  return Path(Metric::Geodesic, Topology::Backward, {leg}, {});
}

Path type1_path(Metric kind, const Subspace& v, const Subspace& w,
                Topology topology, const Tolerances& tol) {
  require_path_metric(kind);
  detail::require_compatible(v, w);
  const int p = v.dim();
  const int q = w.dim();
  if (p > q)
    throw std::invalid_argument("rotation-expansion paths need dim v <= dim w");
  PrincipalDecomposition pd = principal_decomposition(v, w, tol);

  std::vector<Path::Leg> legs;
  std::vector<PathEvent> events;
  if (p == 0) {
    legs.push_back(ConstantLeg{0.0, 1.0, v});
    if (q > 0)
      events.push_back(PathEvent{topology == Topology::Backward ? 1.0 : 0.0,
                                 true, v, w});
    // Forward expansion at the start means the constant leg already sits at w.
    if (q > 0 && topology == Topology::Forward)
      legs.back() = ConstantLeg{0.0, 1.0, w};
    return Path(kind, topology, std::move(legs), std::move(events));
  }

  Matrix unused = pd.f.rightCols(q - p);
  if (topology == Topology::Backward || q == p) {
    RotationLeg leg = make_rotation_leg(v, pd, p, Matrix(v.ambient(), 0), tol);
    if (q > p) {
      Subspace arrived = Subspace::from_spanning(leg.frame_at(1.0), v.field(), tol);
      events.push_back(PathEvent{1.0, true, arrived, w});
    }
    legs.push_back(std::move(leg));
  } else {
    RotationLeg leg = make_rotation_leg(v, pd, p, unused, tol);
    Subspace lifted = Subspace::from_spanning(leg.frame_at(0.0), v.field(), tol);
    events.push_back(PathEvent{0.0, true, v, lifted});
    legs.push_back(std::move(leg));
  }
  return Path(kind, topology, std::move(legs), std::move(events));
}

Path type2_path(Metric kind, const Subspace& v, const Subspace& w,
                Topology topology, const Tolerances& tol) {
  require_path_metric(kind);
  detail::require_compatible(v, w);
  if (v.dim() == 0)
    throw std::invalid_argument("collapse paths need a nonzero start");
  const Subspace zero = Subspace::zero(v.ambient(), v.field());
  PathBuilder b(kind, topology, 0.0, v);
  b.hold_until(0.5).jump_to(zero);
  if (w.dim() > 0) {
    b.hold_until(0.75).jump_to(w).hold_until(1.0);
  } else {
    b.hold_until(1.0);
  }
  return std::move(b).build();
}

Path minimal_geodesic(Metric kind, const Subspace& v, const Subspace& w,
                      Topology topology, const Tolerances& tol) {
  require_path_metric(kind);
  detail::require_compatible(v, w);
  const double dg = asym_distance(Metric::Geodesic, v, w,
                                  InfConvention::DimensionDiameter, tol);
  const double cap = diameter(kind, v.dim());
  if (v.dim() <= w.dim() && dg <= cap + 1e-12)
    return type1_path(kind, v, w, topology, tol);
  return type2_path(kind, v, w, topology, tol);
}

double intrinsic_distance(Metric kind, const Subspace& v, const Subspace& w,
                          const Tolerances& tol) {
  require_path_metric(kind);
  detail::require_compatible(v, w);
  const double dg = asym_distance(Metric::Geodesic, v, w,
                                  InfConvention::DimensionDiameter, tol);
  return std::min(dg, diameter(kind, v.dim()));
}

double path_length(const Path& path) { return path.exact_length(); }

double path_length_sampled(const Path& path, int samples) {
  return path.sampled_length(samples);
}

namespace {

double dg_slack(const Subspace& u, const Subspace& v, const Subspace& w,
                const Tolerances& tol) {
  const auto d = [&](const Subspace& a, const Subspace& b) {
    return asym_distance(Metric::Geodesic, a, b, InfConvention::DimensionDiameter,
                         tol);
  };
  return d(v, u) + d(u, w) - d(v, w);
}

double dfs_slack(const Subspace& u, const Subspace& v, const Subspace& w,
                 const Tolerances& tol) {
  return angle_via_principal(v, u, tol) + angle_via_principal(u, w, tol) -
         angle_via_principal(v, w, tol);
}

}  // namespace

BetweenResult is_between_dg(const Subspace& u, const Subspace& v,
                            const Subspace& w, const Tolerances& tol) {
  detail::require_compatible(u, v);
  detail::require_compatible(v, w);
  BetweenResult res;
  res.numeric_slack = dg_slack(u, v, w, tol);
  if (same_span(u, v, tol) || same_span(u, w, tol)) {
    res.between = true;
    res.which = BetweenCase::Endpoint;
    return res;
  }
  const int r = u.dim(), p = v.dim(), q = w.dim();
  if (r <= q && q < p && contains(w, u, tol)) {
    res.between = true;
    res.which = BetweenCase::CaseI;
    return res;
  }
  if (r < p && p <= q && contains(w, u, tol) && is_fully_orthogonal(v, w, tol)) {
    res.between = true;
    res.which = BetweenCase::CaseII;
    return res;
  }
  if (p <= r && r <= q) {
    Subspace u1 = projection_subspace(u, v, tol);
    Subspace w1 = projection_subspace(w, v, tol);
    const auto d = [&](const Subspace& a, const Subspace& b) {
      return asym_distance(Metric::Geodesic, a, b,
                           InfConvention::DimensionDiameter, tol);
    };
    const bool on_geodesic =
        std::abs(d(v, u1) + d(u1, w1) - d(v, w1)) <= std::max(tol.dist_tol, 1e-9);
    if (on_geodesic) {
      Subspace leftover_u = complement_within(u, u1, tol);
      Subspace leftover_w = complement_within(w, w1, tol);
      if (contains(leftover_w, leftover_u, tol)) {
        res.between = true;
        res.which = BetweenCase::CaseIII;
        return res;
      }
    }
  }
  return res;
}

BetweenResult is_between_dfs(const Subspace& u, const Subspace& v,
                             const Subspace& w, const Tolerances& tol) {
  detail::require_compatible(u, v);
  detail::require_compatible(v, w);
  BetweenResult res;
  res.numeric_slack = dfs_slack(u, v, w, tol);
  if (same_span(u, v, tol) || same_span(u, w, tol)) {
    res.between = true;
    res.which = BetweenCase::Endpoint;
    return res;
  }
  if (contains(w, u, tol) &&
      (is_partially_orthogonal(v, w, tol) ||
       contains(u, project_subspace(w, v, tol), tol))) {
    res.between = true;
    res.which = BetweenCase::CaseI;
    return res;
  }
  if (contains(u, v, tol) &&
      (is_partially_orthogonal(v, w, tol) ||
       contains(w, complement_within(u, v, tol), tol))) {
    res.between = true;
    res.which = BetweenCase::CaseII;
    return res;
  }

  // Split off a shared flag: v = [v0] + shared, u = [u0] + mid, w = [w0] + rest
  // with shared < mid < rest nested, the distinguished vectors all orthogonal
  // to rest, and u0 a positive aligned combination of v0 and w0.
  const int r = u.dim(), p = v.dim(), q = w.dim();
  const double gate = std::max(tol.angle_tol, 1e-8);
  if (p >= 1 && r >= 1 && q >= 1) {
    Subspace shared = intersection(v, w, tol);
    Subspace mid = intersection(u, w, tol);
    if (shared.dim() == p - 1 && mid.dim() == r - 1 &&
        contains(mid, shared, tol) && contains(u, shared, tol)) {
      Subspace v0s = complement_within(v, shared, tol);
      Vector v0 = v0s.basis().col(0);
      Vector w_proj = project_vector(w, v0);
      if (w_proj.norm() > gate) {
        Vector w0 = w_proj / w_proj.norm();
        Matrix w0_col(w.ambient(), 1);
        w0_col.col(0) = w0;
        Subspace rest = complement_within(
            w, Subspace::from_orthonormal(w0_col, w.field()), tol);
        Subspace u0s = complement_within(u, mid, tol);
        Vector u0 = u0s.basis().col(0);
        const bool flags_clear =
            rest.dim() == q - 1 && contains(rest, mid, tol) &&
            project_vector(rest, v0).norm() <= gate &&
            project_vector(rest, u0).norm() <= gate;
        if (flags_clear) {
          Matrix plane(v.ambient(), 2);
          plane.col(0) = v0;
          plane.col(1) = w0;
          Matrix gram = plane.adjoint() * plane;
          Vector rhs = plane.adjoint() * u0;
          Vector coef = gram.ldlt().solve(rhs);
          const double residual = (u0 - plane * coef).norm();
          const Complex cross = coef(0) * std::conj(coef(1));
          const bool positive_pair =
              std::abs(coef(0)) > gate && std::abs(coef(1)) > gate &&
              cross.real() > 0 &&
              std::abs(cross.imag()) <= 1e-8 * std::abs(cross);
          if (residual <= gate && positive_pair) {
            res.between = true;
            res.which = BetweenCase::CaseIII;
            return res;
          }
        }
      }
    }
  }
  return res;
}

bool segment_exists_dfs(const Subspace& v, const Subspace& w,
                        const Tolerances& tol) {
  detail::require_compatible(v, w);
  return is_partially_orthogonal(v, w, tol) ||
         v.dim() <= intersection_dim(v, w, tol) + 1;
}

Subspace line_between_construct(const Subspace& k, const Subspace& l,
                                double kappa, double lambda,
                                const Tolerances& tol) {
  detail::require_compatible(k, l);
  if (k.dim() != 1 || l.dim() != 1)
    throw std::invalid_argument("line_between_construct needs one-dimensional inputs");
  if (!(kappa > 0) || !(lambda > 0))
    throw std::invalid_argument("coefficients must be positive");
  Vector v = k.basis().col(0);
  Vector w = l.basis().col(0);
  const Complex c = v.dot(w);
  if (std::abs(c) > 0) w *= std::conj(c) / std::abs(c);
  Vector j = kappa * v + lambda * w;
  Subspace mid = Subspace::from_spanning(j, k.field(), tol);
  const double direct = principal_angles(k, l, tol)(0);
  const double via = principal_angles(k, mid, tol)(0) +
                     principal_angles(mid, l, tol)(0);
  if (std::abs(direct - via) > 1e-10)
    throw std::runtime_error("angle additivity failed for the constructed line");
  return mid;
}

}  // namespace subgeo
