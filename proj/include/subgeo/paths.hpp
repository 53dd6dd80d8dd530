#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "subgeo/core.hpp"
#include "subgeo/metrics.hpp"

namespace subgeo {

// Which side a path takes at a jump instant: Backward continuity keeps the
// containment-larger side, Forward the smaller one.
enum class Topology { Backward, Forward };

// One simultaneous rotation by angles theta_i inside mutually orthogonal
// planes span{e_i, g_i}, sweeping the parameter interval [t0, t1], plus an
// optional static block that rides along unchanged. Columns with theta_i = 0
// stay at e_i (g column unused, kept zero).
struct RotationLeg {
  double t0 = 0.0, t1 = 1.0;
  Field field = Field::Real;
  Matrix e;            // n x p start frame
  Matrix g;            // n x p rotation partners
  RealVector theta;    // p rotation amounts over the full leg
  Matrix static_part;  // n x k, orthogonal to every e_i, g_i

  Matrix frame_at(double t) const;        // n x (p + k), orthonormal
  double rotation_length() const;         // sqrt(sum theta^2)
};

struct ConstantLeg {
  double t0 = 0.0, t1 = 1.0;
  Subspace value;
};

// A jump at parameter t: dimension grows (expand, free) or drops (contract,
// charged the diameter of the pre-jump dimension). The penalty field is
// filled in by the owning Path from its metric.
struct PathEvent {
  double t;
  bool expand;
  Subspace before;
  Subspace after;
  double penalty = 0.0;
};

// Piecewise path of subspaces: contiguous legs with jump events at leg
// boundaries. Lengths are measured with an asymmetric l2- or wedge-family
// metric; rotation legs all have the same length under any of them.
class Path {
 public:
  using Leg = std::variant<ConstantLeg, RotationLeg>;

  Path(Metric kind, Topology topology, std::vector<Leg> legs,
       std::vector<PathEvent> events);

  Metric metric() const { return metric_; }
  Topology topology() const { return topology_; }
  double t_begin() const;
  double t_end() const;
  const std::vector<Leg>& legs() const { return legs_; }
  const std::vector<PathEvent>& events() const { return events_; }

  Subspace at(double t) const;
  Subspace start() const { return at(t_begin()); }
  Subspace end() const { return at(t_end()); }

  // Sum of rotation lengths plus contraction penalties.
  double exact_length() const;
  // Partition sum over `samples` >= 2 uniform parameters; approaches the
  // exact length from below as the partition refines.
  double sampled_length(int samples) const;

  bool has_contraction() const;

 private:
  Metric metric_;
  Topology topology_;
  std::vector<Leg> legs_;
  std::vector<PathEvent> events_;
};

// Incremental construction of piecewise-constant paths with jumps (the null
// paths and collapse shapes); legs are appended left to right.
class PathBuilder {
 public:
  PathBuilder(Metric kind, Topology topology, double t_start, Subspace start);
  PathBuilder& hold_until(double t);           // constant leg up to t
  PathBuilder& jump_to(const Subspace& next);  // event at the current instant
  Path build() &&;

 private:
  Metric metric_;
  Topology topology_;
  double t_;
  Subspace current_;
  std::vector<Path::Leg> legs_;
  std::vector<PathEvent> events_;
};

// The rotation taking v to w inside their joint span, dim v = dim w, as a
// single-leg Path over [0, 1] measured with the Geodesic kind. Minimal among
// fixed-dimension paths; its length is the classical geodesic distance.
Path grassmannian_geodesic(const Subspace& v, const Subspace& w,
                           const Tolerances& tol = {});

// dim v <= dim w: rotate v onto the projection subspace of w, then expand by
// the unused directions of w. The expansion lands at the final instant under
// Backward topology and immediately after the start under Forward. Length:
// the asymmetric geodesic distance.
Path type1_path(Metric kind, const Subspace& v, const Subspace& w,
                Topology topology, const Tolerances& tol = {});

// v != {0}: hold at v, contract to {0}, expand to w. Length: diameter(kind, dim v).
Path type2_path(Metric kind, const Subspace& v, const Subspace& w,
                Topology topology, const Tolerances& tol = {});

// Whichever of the two shapes is shorter (ties prefer the rotation shape).
// Max-family kinds are rejected: their balls are too coarse for any path to
// have finite refined length, so no geodesic framework exists.
Path minimal_geodesic(Metric kind, const Subspace& v, const Subspace& w,
                      Topology topology = Topology::Backward,
                      const Tolerances& tol = {});

// min(asymmetric geodesic distance, diameter(kind, dim v)): the induced
// intrinsic (path-length) distance for l2 and wedge kinds.
double intrinsic_distance(Metric kind, const Subspace& v, const Subspace& w,
                          const Tolerances& tol = {});

double path_length(const Path& path);
double path_length_sampled(const Path& path, int samples);

inline Subspace eval_path(const Path& path, double t) { return path.at(t); }

enum class BetweenCase { None, Endpoint, CaseI, CaseII, CaseIII };

struct BetweenResult {
  bool between = false;
  BetweenCase which = BetweenCase::None;
  double numeric_slack = 0.0;  // d(v,u) + d(u,w) - d(v,w)
};

// Between-point test for the geodesic kind, d_g(v,u) + d_g(u,w) = d_g(v,w):
//   CaseI    dim u <= dim w < dim v and u inside w
//   CaseII   dim u < dim v <= dim w, u inside w, v fully orthogonal to w
//   CaseIII  dim v <= dim u <= dim w, and the leading principal frames give
//            projection subspaces u', w' with u' on a minimal geodesic from v
//            to w' and the leftover part of u inside the leftover part of w
// CaseIII inspects only the canonical principal-vector construction; when the
// projection subspace is not unique (repeated or right angles) a witness
// outside that construction can be missed.
BetweenResult is_between_dg(const Subspace& u, const Subspace& v,
                            const Subspace& w, const Tolerances& tol = {});

// Between-point test for the Fubini-Study kind (angle additivity
// theta(v,u) + theta(u,w) = theta(v,w)):
//   CaseI    u inside w, and v partially orthogonal to w or P_w(v) inside u
//   CaseII   v inside u, and v partially orthogonal to w or the complement of
//            v within u inside w
//   CaseIII  v = [v0] + r, u = [u0] + s, w = [w0] + t with r < s < t nested,
//            u0, v0, w0 orthogonal to t, and u0 a positive combination of
//            aligned v0, w0
// Same canonical-construction caveat as is_between_dg.
BetweenResult is_between_dfs(const Subspace& u, const Subspace& v,
                             const Subspace& w, const Tolerances& tol = {});

// A Fubini-Study segment (isometric embedding of a real interval) from v to w
// exists iff v is partially orthogonal to w or dim v <= dim(v cap w) + 1.
bool segment_exists_dfs(const Subspace& v, const Subspace& w,
                        const Tolerances& tol = {});

// The line spanned by kappa*v + lambda*w for aligned unit representatives of
// the lines k and l (kappa, lambda > 0); lies angle-between them.
Subspace line_between_construct(const Subspace& k, const Subspace& l,
                                double kappa, double lambda,
                                const Tolerances& tol = {});

}  // namespace subgeo
