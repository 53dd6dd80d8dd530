#include "subgeo/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/SVD>

#include "subgeo/angle.hpp"
#include "subgeo/core.hpp"
#include "subgeo/json_io.hpp"
#include "subgeo/metrics.hpp"
#include "subgeo/multivector.hpp"
#include "subgeo/paths.hpp"
#include "subgeo/principal.hpp"
#include "subgeo/random.hpp"

namespace subgeo {
namespace {

constexpr double kTol = 1e-9;        // generic inequality tolerance
constexpr double kEqTol = 1e-10;     // planted equality tolerance
constexpr double kStrictGap = 1e-12; // required margin of strict inequalities
constexpr double kGenericMargin = 1e-6;
constexpr double kDemoMargin = 0.1;  // counterexamples must win by this much

const double kHalfPi = std::acos(-1.0) / 2.0;

// ---------------------------------------------------------------------------
// Exact-bit (de)serialization. Violation inputs hold orthonormal bases, so
// parsing restores the identical matrix and replay reproduces the identical
// floating-point slack.

const char* field_str(Field f) {
  return f == Field::Complex ? "complex" : "real";
}

Field field_parse(const nlohmann::json& j) {
  const std::string s = j.get<std::string>();
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field tag: " + s);
}

nlohmann::json mat_json(const Matrix& m, Field field) {
  nlohmann::json vectors = nlohmann::json::array();
  for (int c = 0; c < m.cols(); ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      const Complex z = m(r, c);
      if (field == Field::Real) {
        col.push_back(z.real());
      } else {
        col.push_back(nlohmann::json::array({z.real(), z.imag()}));
      }
    }
    vectors.push_back(std::move(col));
  }
  return nlohmann::json{{"field", field_str(field)},
                        {"ambient", m.rows()},
                        {"vectors", std::move(vectors)}};
}

Matrix mat_parse(const nlohmann::json& j, Field* field_out) {
  const Field field = field_parse(j.at("field"));
  const int n = j.at("ambient").get<int>();
  const auto& vecs = j.at("vectors");
  Matrix m(n, static_cast<int>(vecs.size()));
  for (int c = 0; c < m.cols(); ++c) {
    const auto& col = vecs.at(c);
    for (int r = 0; r < n; ++r) {
      const auto& e = col.at(r);
      if (field == Field::Real) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else {
        m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
  }
  if (field_out) *field_out = field;
  return m;
}

nlohmann::json sub_json(const Subspace& s) { return subspace_to_json(s); }

Subspace sub_parse(const nlohmann::json& j) {
  Field field = Field::Real;
  Matrix m = mat_parse(j, &field);
  return Subspace::from_orthonormal(std::move(m), field);
}

Subspace sub_arg(const nlohmann::json& in, const char* key) {
  return sub_parse(in.at(key));
}

Metric metric_arg(const nlohmann::json& in) {
  Metric k = Metric::Geodesic;
  const std::string name = in.at("kind").get<std::string>();
  if (!metric_from_name(name, &k))
    throw std::invalid_argument("unknown metric kind: " + name);
  return k;
}

// ---------------------------------------------------------------------------
// Chain orderings. Each row lists (a, b, c) with a > b > c on distinct inputs,
// capped by factor * c >= a; within-family rows use factor pi/2, cross-family
// rows use factor sqrt(dim).

struct ChainSpec {
  Metric a, b, c;
  bool dim_cap;  // true: sqrt(p) cap; false: pi/2 cap
};

ChainSpec chain_spec(const std::string& id) {
  if (id == "B1-l2")
    return {Metric::Geodesic, Metric::ChordalFrobenius,
            Metric::ProjectionFrobenius, false};
  if (id == "B1-wedge")
    return {Metric::FubiniStudy, Metric::ChordalWedge, Metric::BinetCauchy,
            false};
  if (id == "B1-max")
    return {Metric::Asimov, Metric::ChordalTwo, Metric::ProjectionTwo, false};
  if (id == "B2-geo")
    return {Metric::Geodesic, Metric::FubiniStudy, Metric::Asimov, true};
  if (id == "B2-chord")
    return {Metric::ChordalFrobenius, Metric::ChordalWedge, Metric::ChordalTwo,
            true};
  if (id == "B2-proj")
    return {Metric::ProjectionFrobenius, Metric::BinetCauchy,
            Metric::ProjectionTwo, true};
  throw std::invalid_argument("unknown chain id: " + id);
}

struct ChainValues {
  double a, b, c, cap;
};

ChainValues chain_values(const std::string& id, const Subspace& v,
                         const Subspace& w) {
  const ChainSpec spec = chain_spec(id);
  const int p = v.dim();
  const RealVector angles = principal_angles(v, w);
  ChainValues out;
  out.a = asym_distance_from_angles(spec.a, p, w.dim(), v.ambient(), angles);
  out.b = asym_distance_from_angles(spec.b, p, w.dim(), v.ambient(), angles);
  out.c = asym_distance_from_angles(spec.c, p, w.dim(), v.ambient(), angles);
  out.cap = spec.dim_cap ? std::sqrt(static_cast<double>(p)) : kHalfPi;
  return out;
}

double padded_angle(const RealVector& angles, int i) {
  return i < angles.size() ? angles(i) : kHalfPi;
}

Subspace leading_cols(const Matrix& f, int r, Field field) {
  return Subspace::from_orthonormal(f.leftCols(r), field);
}

Subspace trailing_cols(const Matrix& f, int r, Field field) {
  return Subspace::from_orthonormal(f.rightCols(r), field);
}

// ---------------------------------------------------------------------------
// Every check's slack, computed from its serialized inputs. Positive slack is
// a violation. Trials and replay both call this, so replay is bit-exact.

double compute_check(const std::string& check, const nlohmann::json& in) {
  if (check == "triangle") {
    const Metric k = metric_arg(in);
    const Subspace u = sub_arg(in, "u"), v = sub_arg(in, "v"),
                   w = sub_arg(in, "w");
    return asym_distance(k, u, w) - asym_distance(k, u, v) -
           asym_distance(k, v, w) - kTol;
  }
  if (check == "t0-zero") {
    const Metric k = metric_arg(in);
    return asym_distance(k, sub_arg(in, "v"), sub_arg(in, "w")) - kTol;
  }
  if (check == "t0-nonzero") {
    const Metric k = metric_arg(in);
    return kTol - asym_distance(k, sub_arg(in, "v"), sub_arg(in, "w"));
  }
  if (check == "t0-separation") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    if (same_span(v, w)) return -1.0;
    return std::min(kTol - asym_distance(k, v, w),
                    kTol - asym_distance(k, w, v));
  }
  if (check == "t0-contains") {
    const Subspace outer = sub_arg(in, "outer"), inner = sub_arg(in, "inner");
    const bool expect = in.at("expect").get<bool>();
    return contains(outer, inner) == expect ? -1.0 : 1.0;
  }
  if (check == "mono-source") {
    const Metric k = metric_arg(in);
    const Subspace vs = sub_arg(in, "v_small"), vb = sub_arg(in, "v_big"),
                   w = sub_arg(in, "w");
    return asym_distance(k, vs, w) - asym_distance(k, vb, w) - kTol;
  }
  if (check == "mono-target") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), ws = sub_arg(in, "w_small"),
                   wb = sub_arg(in, "w_big");
    return asym_distance(k, v, wb) - asym_distance(k, v, ws) - kTol;
  }
  if (check == "duality") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    return std::abs(asym_distance(k, v, w) -
                    asym_distance(k, complement(w), complement(v))) -
           kTol;
  }
  if (check == "chain-cap" || check == "chain-upper" ||
      check == "chain-lower" || check == "chain-zero" ||
      check == "chain-eq-upper" || check == "chain-eq-lower") {
    const ChainValues cv = chain_values(in.at("chain").get<std::string>(),
                                        sub_arg(in, "v"), sub_arg(in, "w"));
    if (check == "chain-cap") return cv.a - cv.cap * cv.c - kTol;
    if (check == "chain-upper") return kStrictGap - (cv.a - cv.b);
    if (check == "chain-lower") return kStrictGap - (cv.b - cv.c);
    if (check == "chain-eq-upper") return std::abs(cv.a - cv.b) - kEqTol;
    if (check == "chain-eq-lower") return std::abs(cv.b - cv.c) - kEqTol;
    return std::max({cv.a, cv.b, cv.c}) - kEqTol;  // chain-zero
  }
  if (check == "interlace-lower" || check == "interlace-upper") {
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w"),
                   wp = sub_arg(in, "w_prime");
    const int i = in.at("i").get<int>();
    const RealVector full = principal_angles(v, w);
    const RealVector part = principal_angles(v, wp);
    if (check == "interlace-lower")
      return padded_angle(full, i) - part(i) - kTol;
    return part(i) - padded_angle(full, i + w.dim() - wp.dim()) - kTol;
  }
  if (check == "interlace-lead" || check == "interlace-tail") {
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    const int r = in.at("r").get<int>();
    const int i = in.at("i").get<int>();
    const PrincipalDecomposition dec = principal_decomposition(v, w);
    if (check == "interlace-lead") {
      const Subspace wp = leading_cols(dec.f, r, w.field());
      const RealVector part = principal_angles(v, wp);
      return std::abs(part(i) - padded_angle(dec.angles, i)) - kEqTol;
    }
    const Subspace wp = trailing_cols(dec.f, r, w.field());
    const RealVector part = principal_angles(v, wp);
    return std::abs(part(i) - padded_angle(dec.angles, i + w.dim() - r)) -
           kEqTol;
  }
  if (check == "route-agreement") {
    Field field = Field::Real;
    const Matrix v_raw = mat_parse(in.at("v_raw"), &field);
    const Matrix w_raw = mat_parse(in.at("w_raw"), &field);
    const Subspace v = Subspace::from_spanning(v_raw, field);
    const Subspace w = Subspace::from_spanning(w_raw, field);
    const double base = angle_via_principal(v, w);
    const double dev = std::max(
        {std::abs(angle_via_contraction(blade_of(v), blade_of(w)) - base),
         std::abs(angle_via_gram(v_raw, w_raw) - base),
         std::abs(angle_via_projection_det(v, w) - base),
         std::abs(angle_via_multivector_projection(v, w) - base)});
    return dev - kTol;
  }
  if (check == "geo-endpoints") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    const Path path = type1_path(k, v, w, Topology::Backward);
    const Subspace s = path.start(), e = path.end();
    const bool ok = s.dim() == v.dim() && intersection_dim(s, v) == v.dim() &&
                    e.dim() == w.dim() && intersection_dim(e, w) == w.dim();
    return ok ? -1.0 : 1.0;
  }
  if (check == "geo-exact-dg") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    const Path path = type1_path(k, v, w, Topology::Backward);
    return std::abs(path.exact_length() -
                    asym_distance(Metric::Geodesic, v, w)) -
           kEqTol;
  }
  if (check == "geo-sampled" || check == "geo-sampled-below") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    const int samples = in.at("samples").get<int>();
    const Path path = type1_path(k, v, w, Topology::Backward);
    const double exact = path.exact_length();
    const double sampled = path.sampled_length(samples);
    // summing `samples` chord distances accumulates that much roundoff
    if (check == "geo-sampled-below")
      return sampled - exact - samples * 1e-14;
    // the partition estimator misses O(1/k^2); bands are stated at k = 1000
    const double scale =
        std::max(1.0, (1000.0 / samples) * (1000.0 / samples));
    const double band =
        (family_of(k) == MetricFamily::L2 ? 1e-6 : 1e-5) * scale;
    return std::abs(sampled - exact) - band;
  }
  if (check == "geo-intrinsic" || check == "geo-intrinsic-formula") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    const Path path = minimal_geodesic(k, v, w);
    if (check == "geo-intrinsic")
      return std::abs(path.exact_length() - intrinsic_distance(k, v, w)) -
             kEqTol;
    const double formula = std::min(asym_distance(Metric::Geodesic, v, w),
                                    diameter(k, v.dim()));
    return std::abs(path.exact_length() - formula) - kEqTol;
  }
  if (check == "geo-via") {
    const Metric k = metric_arg(in);
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w"),
                   y = sub_arg(in, "y");
    return intrinsic_distance(k, v, w) - intrinsic_distance(k, v, y) -
           intrinsic_distance(k, y, w) - kTol;
  }
  if (check == "between-dg-flag" || check == "between-dg-additive" ||
      check == "between-dg-margin") {
    const Subspace u = sub_arg(in, "u"), v = sub_arg(in, "v"),
                   w = sub_arg(in, "w");
    const BetweenResult r = is_between_dg(u, v, w);
    if (check == "between-dg-flag")
      return r.between == in.at("expect").get<bool>() ? -1.0 : 1.0;
    if (check == "between-dg-additive")
      return std::abs(r.numeric_slack) - kTol;
    return kGenericMargin - r.numeric_slack;
  }
  if (check == "between-dfs-flag" || check == "between-dfs-additive" ||
      check == "between-dfs-margin") {
    const Subspace u = sub_arg(in, "u"), v = sub_arg(in, "v"),
                   w = sub_arg(in, "w");
    const BetweenResult r = is_between_dfs(u, v, w);
    if (check == "between-dfs-flag")
      return r.between == in.at("expect").get<bool>() ? -1.0 : 1.0;
    if (check == "between-dfs-additive")
      return std::abs(r.numeric_slack) - kTol;
    return kGenericMargin - r.numeric_slack;
  }
  if (check == "bc-total" || check == "bc-dbc") {
    const Subspace v = sub_arg(in, "v"), w = sub_arg(in, "w");
    const int n = v.ambient();
    const int q = w.dim();
    Matrix beta(n, n);
    if (q > 0) beta.leftCols(q) = w.basis();
    if (q < n) beta.rightCols(n - q) = complement(w).basis();
    const BcDecomposition dec = bc_coordinate_decomposition(v, w, beta);
    const double dbc = asym_distance(Metric::BinetCauchy, v, w);
    if (check == "bc-total") return std::abs(dec.total - dbc * dbc) - kEqTol;
    return std::abs(std::sqrt(std::max(dec.total, 0.0)) - dbc) - kEqTol;
  }
  if (check == "nonmetric-demo") {
    LegacyMetric k = LegacyMetric::NaiveProjectionF;
    const std::string name = in.at("legacy").get<std::string>();
    if (!legacy_from_name(name, &k))
      throw std::invalid_argument("unknown legacy kind: " + name);
    const Subspace a = sub_arg(in, "k"), b = sub_arg(in, "l"),
                   mid = sub_arg(in, "mid");
    return legacy_distance(k, a, b) - legacy_distance(k, a, mid) -
           legacy_distance(k, mid, b) - kDemoMargin;
  }
  // Synthetic records appended by the fold step; their slack is fixed.
  if (check == "injected-bug" || check == "trial-exception" ||
      check == "duality-counterexample-missing" ||
      check.rfind("nonmetric-demo-missing", 0) == 0) {
    return 1.0;
  }
  throw std::invalid_argument("unknown check name: " + check);
}

// ---------------------------------------------------------------------------
// Per-trial recording.

struct Recorder {
  long trial = 0;
  double max_slack = -std::numeric_limits<double>::infinity();
  long expected = 0;
  std::vector<Violation> violations;

  void record(const std::string& check, nlohmann::json inputs,
              bool expect_violation = false) {
    inputs["check"] = check;
    double slack = compute_check(check, inputs);
    if (std::isnan(slack)) slack = 1e9;
    if (slack > max_slack) max_slack = slack;
    if (slack > 0.0) {
      if (expect_violation) ++expected;
      violations.push_back(
          {trial, check, slack, std::move(inputs), expect_violation});
    }
  }

  void force(const std::string& check, nlohmann::json inputs) {
    inputs["check"] = check;
    max_slack = std::max(max_slack, 1.0);
    violations.push_back({trial, check, 1.0, std::move(inputs), false});
  }
};

Field trial_field(long trial) {
  return trial % 2 == 0 ? Field::Real : Field::Complex;
}

nlohmann::json kind_inputs(Metric kind, nlohmann::json base) {
  base["kind"] = metric_name(kind);
  return base;
}

// ---------------------------------------------------------------------------
// Suite trial bodies.

void trial_triangle(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);
  int p = rng.uniform_int(0, n), q = rng.uniform_int(0, n),
      r = rng.uniform_int(0, n);
  Subspace u(n, field), v(n, field), w(n, field);
  const bool planted = rng.uniform() < 0.25;
  const int variant = planted ? rng.uniform_int(0, 3) : -1;
  switch (variant) {
    case 0: {  // nested chain u <= v <= w
      int d0 = std::min({p, q, r}), d2 = std::max({p, q, r});
      int d1 = p + q + r - d0 - d2;
      w = random_subspace(n, d2, field, rng);
      v = random_subspace_of(w, d1, rng);
      u = random_subspace_of(v, d0, rng);
      break;
    }
    case 1: {  // middle point inside the target
      w = random_subspace(n, q, field, rng);
      v = random_subspace_of(w, std::min(p, q), rng);
      u = random_subspace(n, r, field, rng);
      break;
    }
    case 2: {  // middle point orthogonal to the target
      w = random_subspace(n, q, field, rng);
      v = random_subspace_of(complement(w), std::min(p, n - q), rng);
      u = random_subspace(n, r, field, rng);
      break;
    }
    case 3: {  // duplicated corner
      u = random_subspace(n, p, field, rng);
      w = random_subspace(n, q, field, rng);
      v = rng.uniform() < 0.5 ? u : w;
      break;
    }
    default:
      u = random_subspace(n, p, field, rng);
      v = random_subspace(n, q, field, rng);
      w = random_subspace(n, r, field, rng);
  }
  const nlohmann::json base{
      {"u", sub_json(u)}, {"v", sub_json(v)}, {"w", sub_json(w)}};
  for (Metric kind : kAllMetrics)
    rec.record("triangle", kind_inputs(kind, base));
}

void trial_t0(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);

  // Planted containment: distances must vanish one way.
  const int q = rng.uniform_int(0, n);
  const int p = rng.uniform_int(0, q);
  const Subspace w = random_subspace(n, q, field, rng);
  const Subspace v = random_subspace_of(w, p, rng);
  const nlohmann::json contained{{"v", sub_json(v)}, {"w", sub_json(w)}};
  rec.record("t0-contains", {{"outer", sub_json(w)},
                             {"inner", sub_json(v)},
                             {"expect", true}});
  for (Metric kind : kAllMetrics) {
    rec.record("t0-zero", kind_inputs(kind, contained));
    rec.record("t0-separation", kind_inputs(kind, contained));
    if (p < q) {
      rec.record("t0-nonzero",
                 kind_inputs(kind, {{"v", sub_json(w)}, {"w", sub_json(v)}}));
    }
  }

  // Planted near-miss: one spanning direction rotated out of w by alpha.
  if (q >= 1 && q <= n - 1) {
    const Subspace win = random_subspace_of(w, 1, rng);
    const Subspace wout = random_subspace_of(complement(w), 1, rng);
    const double alpha =
        std::exp(std::log(1e-3) +
                 rng.uniform() * (std::log(kHalfPi) - std::log(1e-3)));
    Matrix dir = std::cos(alpha) * win.basis() + std::sin(alpha) * wout.basis();
    Subspace turned = Subspace::from_orthonormal(dir, field);
    const int s = rng.uniform_int(0, q - 1);
    const Subspace rest =
        random_subspace_of(complement_within(w, win), s, rng);
    const Subspace u = direct_sum(turned, rest);
    const nlohmann::json miss{{"v", sub_json(u)}, {"w", sub_json(w)}};
    rec.record("t0-contains", {{"outer", sub_json(w)},
                               {"inner", sub_json(u)},
                               {"expect", false}});
    for (Metric kind : kAllMetrics) {
      rec.record("t0-nonzero", kind_inputs(kind, miss));
      rec.record("t0-separation", kind_inputs(kind, miss));
    }
  }
}

void trial_monotonicity(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);
  int pv = rng.uniform_int(0, n), pv_small = rng.uniform_int(0, pv);
  int qw = rng.uniform_int(0, n), qw_big = rng.uniform_int(qw, n);

  const Subspace v = random_subspace(n, pv, field, rng);
  const Subspace v_small = random_subspace_of(v, pv_small, rng);
  Subspace w_small(n, field);
  if (rng.uniform() < 0.25 && pv > 0) {
    // Bias the target toward the source so zero angles appear.
    w_small = random_subspace_of(v, std::min(qw, pv), rng);
  } else {
    w_small = random_subspace(n, qw, field, rng);
  }
  const Subspace w_big = direct_sum(
      w_small,
      random_subspace_of(complement(w_small), qw_big - w_small.dim(), rng));

  const nlohmann::json source{{"v_small", sub_json(v_small)},
                              {"v_big", sub_json(v)},
                              {"w", sub_json(w_small)}};
  const nlohmann::json target{{"v", sub_json(v)},
                              {"w_small", sub_json(w_small)},
                              {"w_big", sub_json(w_big)}};
  for (Metric kind : kAllMetrics) {
    rec.record("mono-source", kind_inputs(kind, source));
    rec.record("mono-target", kind_inputs(kind, target));
  }
}

void trial_duality(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);
  Subspace v(n, field), w(n, field);
  if (t == 0) {
    // Guaranteed l2-family counterexample: full space against a line.
    v = Subspace::full(n, field);
    w = random_subspace(n, 1, field, rng);
  } else {
    v = random_subspace(n, rng.uniform_int(0, n), field, rng);
    w = random_subspace(n, rng.uniform_int(0, n), field, rng);
  }
  const nlohmann::json base{{"v", sub_json(v)}, {"w", sub_json(w)}};
  for (Metric kind : kAllMetrics) {
    const bool l2 = family_of(kind) == MetricFamily::L2;
    rec.record("duality", kind_inputs(kind, base), /*expect_violation=*/l2);
  }
}

// Equal-dimension pair with controlled overlap. Small nonzero principal
// angles are resampled away so strict chain inequalities keep honest margins.
std::pair<Subspace, Subspace> chain_pair(int n, Field field, Rng& rng) {
  const int p = rng.uniform_int(0, n);
  const double roll = rng.uniform();
  if (p == 0 || roll < 0.10) {
    Subspace v = random_subspace(n, p, field, rng);
    return {v, v};
  }
  for (int attempt = 0; attempt < 32; ++attempt) {
    Subspace v(n, field), w(n, field);
    if (roll < 0.30 && p <= n - 1) {
      const Subspace shared = random_subspace(n, p - 1, field, rng);
      const Subspace rest = complement(shared);
      v = direct_sum(shared, random_subspace_of(rest, 1, rng));
      w = direct_sum(shared, random_subspace_of(rest, 1, rng));
    } else if (roll < 0.45 && p >= 2) {
      const int s = rng.uniform_int(0, p - 2);
      const Subspace shared = random_subspace(n, s, field, rng);
      const Subspace rest = complement(shared);
      v = direct_sum(shared, random_subspace_of(rest, p - s, rng));
      w = direct_sum(shared, random_subspace_of(rest, p - s, rng));
    } else {
      v = random_subspace(n, p, field, rng);
      w = random_subspace(n, p, field, rng);
    }
    const RealVector angles = principal_angles(v, w);
    bool clean = true;
    for (int i = 0; i < angles.size(); ++i)
      if (angles(i) > 1e-6 && angles(i) < 0.01) clean = false;
    if (clean) return {v, w};
  }
  Subspace v = random_subspace(n, p, field, rng);
  return {v, v};
}

void chain_checks_b1(const Subspace& v, const Subspace& w, Recorder& rec) {
  const nlohmann::json base{{"v", sub_json(v)}, {"w", sub_json(w)}};
  for (const char* id : {"B1-l2", "B1-wedge", "B1-max"}) {
    nlohmann::json in = base;
    in["chain"] = id;
    if (same_span(v, w)) {
      rec.record("chain-zero", in);
    } else {
      rec.record("chain-cap", in);
      rec.record("chain-upper", in);
      rec.record("chain-lower", in);
    }
  }
}

void chain_checks_b2(const Subspace& v, const Subspace& w, Recorder& rec) {
  const nlohmann::json base{{"v", sub_json(v)}, {"w", sub_json(w)}};
  const bool equal_span = same_span(v, w);
  const bool near = !equal_span && intersection_dim(v, w) >= v.dim() - 1;
  for (const char* id : {"B2-geo", "B2-chord", "B2-proj"}) {
    nlohmann::json in = base;
    in["chain"] = id;
    if (equal_span) {
      rec.record("chain-zero", in);
    } else if (near) {
      rec.record("chain-cap", in);
      rec.record("chain-eq-upper", in);
      rec.record("chain-eq-lower", in);
    } else {
      rec.record("chain-cap", in);
      rec.record("chain-upper", in);
      rec.record("chain-lower", in);
    }
  }
}

void trial_chain_b1(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  auto [v, w] = chain_pair(P.n_max, trial_field(t), rng);
  chain_checks_b1(v, w, rec);
}

void trial_chain_b2(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  auto [v, w] = chain_pair(P.n_max, trial_field(t), rng);
  chain_checks_b2(v, w, rec);
}

void trial_interlacing(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);
  const int p = rng.uniform_int(0, n);
  const int q = rng.uniform_int(0, n);
  const int r = rng.uniform_int(0, q);
  const Subspace v = random_subspace(n, p, field, rng);
  const Subspace w = random_subspace(n, q, field, rng);

  const double roll = rng.uniform();
  Subspace wp(n, field);
  int planted = 0;  // 0 random, 1 leading, 2 trailing
  if (roll < 0.5) {
    wp = random_subspace_of(w, r, rng);
  } else {
    const PrincipalDecomposition dec = principal_decomposition(v, w);
    planted = roll < 0.75 ? 1 : 2;
    wp = planted == 1 ? leading_cols(dec.f, r, field)
                      : trailing_cols(dec.f, r, field);
  }

  const nlohmann::json bounds{
      {"v", sub_json(v)}, {"w", sub_json(w)}, {"w_prime", sub_json(wp)}};
  const int m_part = std::min(p, r);
  for (int i = 0; i < m_part; ++i) {
    nlohmann::json in = bounds;
    in["i"] = i;
    rec.record("interlace-lower", in);
    rec.record("interlace-upper", in);
    if (planted != 0) {
      nlohmann::json eq{
          {"v", sub_json(v)}, {"w", sub_json(w)}, {"r", r}, {"i", i}};
      rec.record(planted == 1 ? "interlace-lead" : "interlace-tail", eq);
    }
  }
}

void trial_route_agreement(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const Field field = trial_field(t);
  const int n = rng.uniform_int(1, std::min(P.n_max, 10));
  const int p = rng.uniform_int(0, n);
  const int q = rng.uniform_int(0, n);

  auto draw = [&](int cols) {
    Matrix m(n, cols);
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (int c = 0; c < cols; ++c)
        for (int r = 0; r < n; ++r) m(r, c) = rng.scalar(field);
      if (cols == 0) break;
      Eigen::JacobiSVD<Matrix> svd(m);
      if (svd.singularValues().minCoeff() >= 0.1) break;
    }
    return m;
  };
  const Matrix v_raw = draw(p);
  const Matrix w_raw = draw(q);
  rec.record("route-agreement", {{"v_raw", mat_json(v_raw, field)},
                                 {"w_raw", mat_json(w_raw, field)}});
}

void trial_geodesic_length(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);
  const Metric kind = kAllMetrics[t % 6];  // the l2 and wedge kinds
  const int p = rng.uniform_int(0, n);
  const int q = rng.uniform_int(p, n);
  const Subspace v = random_subspace(n, p, field, rng);
  Subspace w(n, field);
  if (rng.uniform() < 0.25) {
    w = direct_sum(v, random_subspace_of(complement(v), q - p, rng));
  } else {
    w = random_subspace(n, q, field, rng);
  }

  nlohmann::json base = kind_inputs(kind, {{"v", sub_json(v)},
                                           {"w", sub_json(w)}});
  rec.record("geo-endpoints", base);
  rec.record("geo-exact-dg", base);
  nlohmann::json sampled = base;
  sampled["samples"] = P.samples;
  rec.record("geo-sampled", sampled);
  rec.record("geo-sampled-below", sampled);
  rec.record("geo-intrinsic", base);
  rec.record("geo-intrinsic-formula", base);

  for (int j = 0; j < P.perturbations; ++j) {
    const Subspace y =
        random_subspace(n, rng.uniform_int(0, n), field, rng);
    nlohmann::json via = base;
    via["y"] = sub_json(y);
    rec.record("geo-via", via);
  }
}

void between_records(const char* prefix, const Subspace& u, const Subspace& v,
                     const Subspace& w, bool planted, Recorder& rec) {
  nlohmann::json base{
      {"u", sub_json(u)}, {"v", sub_json(v)}, {"w", sub_json(w)}};
  nlohmann::json flag = base;
  flag["expect"] = planted;
  rec.record(std::string(prefix) + "-flag", flag);
  rec.record(std::string(prefix) + (planted ? "-additive" : "-margin"), base);
}

void trial_between_dg(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);

  if (t % 2 == 1 || n < 3) {  // generic triple, almost surely not between
    // proper nontrivial dimensions: {0} and the full space sit between
    // everything and themselves, so they are not generic negatives
    const Subspace v = random_subspace(n, rng.uniform_int(1, n - 1), field, rng);
    const Subspace u = random_subspace(n, rng.uniform_int(1, n - 1), field, rng);
    const Subspace w = random_subspace(n, rng.uniform_int(1, n - 1), field, rng);
    between_records("between-dg", u, v, w, false, rec);
    return;
  }

  switch ((t / 2) % 3) {
    case 0: {  // dim u <= dim w < dim v, u inside w
      const int q = rng.uniform_int(0, n - 1);
      const int p = rng.uniform_int(q + 1, n);
      const int r = rng.uniform_int(0, q);
      const Subspace w = random_subspace(n, q, field, rng);
      const Subspace u = random_subspace_of(w, r, rng);
      const Subspace v = random_subspace(n, p, field, rng);
      between_records("between-dg", u, v, w, true, rec);
      break;
    }
    case 1: {  // dim u < dim v <= dim w, u inside w, v fully orthogonal to w
      const int q = rng.uniform_int(1, n - 1);
      const int p = rng.uniform_int(1, std::min(q, n - q));
      const int r = rng.uniform_int(0, p - 1);
      const Subspace w = random_subspace(n, q, field, rng);
      const Subspace v = random_subspace_of(complement(w), p, rng);
      const Subspace u = random_subspace_of(w, r, rng);
      between_records("between-dg", u, v, w, true, rec);
      break;
    }
    default: {  // on the rotation stage, plus a slice of the unused target
      const int p = rng.uniform_int(1, n - 1);
      const int q = rng.uniform_int(p, n);
      const int r = rng.uniform_int(p, q);
      const Subspace v = random_subspace(n, p, field, rng);
      const Subspace w = random_subspace(n, q, field, rng);
      const Subspace wp = projection_subspace(w, v);
      const Path geo = grassmannian_geodesic(v, wp);
      const double frac = 0.15 + 0.7 * rng.uniform();
      const Subspace y =
          random_subspace_of(complement_within(w, wp), r - p, rng);
      const Subspace u = direct_sum(geo.at(frac), y);
      between_records("between-dg", u, v, w, true, rec);
    }
  }
}

void trial_between_dfs(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = P.n_max;
  const Field field = trial_field(t);

  if (t % 2 == 1 || n < 3) {
    const Subspace v = random_subspace(n, rng.uniform_int(1, n - 1), field, rng);
    const Subspace u = random_subspace(n, rng.uniform_int(1, n - 1), field, rng);
    const Subspace w = random_subspace(n, rng.uniform_int(1, n - 1), field, rng);
    between_records("between-dfs", u, v, w, false, rec);
    return;
  }

  switch ((t / 2) % 3) {
    case 0: {  // u inside w; projection of v inside u, or v leaves w entirely
      const int q = rng.uniform_int(1, n - 1);
      const Subspace w = random_subspace(n, q, field, rng);
      if (rng.uniform() < 0.3) {
        const int p = rng.uniform_int(1, n - q);
        const Subspace out = random_subspace_of(complement(w), 1, rng);
        const Subspace v =
            direct_sum(out, random_subspace_of(complement(out), p - 1, rng));
        const Subspace u = random_subspace_of(w, rng.uniform_int(0, q), rng);
        between_records("between-dfs", u, v, w, true, rec);
      } else {
        const int p = rng.uniform_int(0, n);
        const Subspace v = random_subspace(n, p, field, rng);
        const Subspace pw = project_subspace(w, v);
        const int extra = rng.uniform_int(0, q - pw.dim());
        const Subspace u = direct_sum(
            pw, random_subspace_of(complement_within(w, pw), extra, rng));
        between_records("between-dfs", u, v, w, true, rec);
      }
      break;
    }
    case 1: {  // v inside u, the added part of u inside w
      const int p = rng.uniform_int(0, n - 1);
      const Subspace v = random_subspace(n, p, field, rng);
      const int y_dim = rng.uniform_int(1, n - p);
      const Subspace y = random_subspace_of(complement(v), y_dim, rng);
      const Subspace u = direct_sum(v, y);
      const int extra = rng.uniform_int(0, n - y_dim);
      const Subspace w =
          direct_sum(y, random_subspace_of(complement(y), extra, rng));
      between_records("between-dfs", u, v, w, true, rec);
      break;
    }
    default: {  // lines over a nested chain, turning inside a fixed plane
      const int t_dim = rng.uniform_int(0, n - 2);
      const int s_dim = rng.uniform_int(0, t_dim);
      const int r_dim = rng.uniform_int(0, s_dim);
      const Subspace frame = random_subspace(n, t_dim + 2, field, rng);
      const Matrix& fb = frame.basis();
      const Vector a = fb.col(t_dim), b = fb.col(t_dim + 1);
      const double phi1 = 0.1 + 0.35 * rng.uniform();
      const double phi2 = 0.1 + 0.35 * rng.uniform();
      auto line = [&](double ang) {
        Matrix col = std::cos(ang) * a + std::sin(ang) * b;
        return Subspace::from_orthonormal(col, field);
      };
      auto chain_part = [&](int d) {
        return Subspace::from_orthonormal(fb.leftCols(d), field);
      };
      const Subspace v = direct_sum(line(0.0), chain_part(r_dim));
      const Subspace u = direct_sum(line(phi1), chain_part(s_dim));
      const Subspace w = direct_sum(line(phi1 + phi2), chain_part(t_dim));
      between_records("between-dfs", u, v, w, true, rec);
    }
  }
}

void trial_bc_decomposition(long t, const SuiteParams& P, Recorder& rec) {
  Rng rng = Rng::for_trial(P.seed, t);
  const int n = rng.uniform_int(2, std::max(2, std::min(P.n_max, 6)));
  const Field field = trial_field(t);
  const Subspace v = random_subspace(n, rng.uniform_int(0, n), field, rng);
  const Subspace w = random_subspace(n, rng.uniform_int(0, n), field, rng);
  const nlohmann::json base{{"v", sub_json(v)}, {"w", sub_json(w)}};
  rec.record("bc-total", base);
  rec.record("bc-dbc", base);
}

// Deterministic fixtures; each is a sought triangle counterexample.
void trial_nonmetric(long t, const SuiteParams&, Recorder& rec) {
  auto unit_line = [](int n, double c0, double s0, int i, int j) {
    Matrix m = Matrix::Zero(n, 1);
    m(i, 0) = c0;
    m(j, 0) = s0;
    return Subspace::from_orthonormal(m, Field::Real);
  };
  if (t == 0 || t == 2) {
    // Two orthogonal lines with the plane they span in the middle.
    Matrix plane = Matrix::Zero(3, 2);
    plane(0, 0) = 1.0;
    plane(1, 1) = 1.0;
    const nlohmann::json in{
        {"legacy", legacy_name(t == 0 ? LegacyMetric::NaiveProjectionF
                                      : LegacyMetric::MaxCorrelation)},
        {"k", sub_json(unit_line(3, 1.0, 0.0, 0, 1))},
        {"l", sub_json(unit_line(3, 0.0, 1.0, 0, 1))},
        {"mid", sub_json(Subspace::from_orthonormal(plane, Field::Real))}};
    rec.record("nonmetric-demo", in, /*expect_violation=*/true);
    return;
  }
  // Plane lines at 0, 40 and 80 degrees; the log-based distance grows too
  // fast near a right angle for the middle line to help.
  const double deg = std::acos(-1.0) / 180.0;
  const nlohmann::json in{
      {"legacy", legacy_name(LegacyMetric::Martin)},
      {"k", sub_json(unit_line(2, 1.0, 0.0, 0, 1))},
      {"l", sub_json(unit_line(2, std::cos(80 * deg), std::sin(80 * deg), 0, 1))},
      {"mid", sub_json(unit_line(2, std::cos(40 * deg), std::sin(40 * deg), 0, 1))}};
  rec.record("nonmetric-demo", in, /*expect_violation=*/true);
}

using TrialFn = void (*)(long, const SuiteParams&, Recorder&);

struct SuiteDef {
  const char* name;
  TrialFn fn;
  int fixed_trials;  // 0: use params.trials
};

const SuiteDef kSuites[] = {
    {"triangle", trial_triangle, 0},
    {"t0", trial_t0, 0},
    {"monotonicity", trial_monotonicity, 0},
    {"duality", trial_duality, 0},
    {"chainB1", trial_chain_b1, 0},
    {"chainB2", trial_chain_b2, 0},
    {"interlacing", trial_interlacing, 0},
    {"route-agreement", trial_route_agreement, 0},
    {"geodesic-length", trial_geodesic_length, 0},
    {"between-dg", trial_between_dg, 0},
    {"between-dfs", trial_between_dfs, 0},
    {"bc-decomposition", trial_bc_decomposition, 0},
    {"nonmetric-demos", trial_nonmetric, 3},
};

const SuiteDef* find_suite(const std::string& name) {
  for (const SuiteDef& def : kSuites)
    if (name == def.name) return &def;
  return nullptr;
}

constexpr int kExpectedKept = 8;  // expected counterexamples stored per report

}  // namespace

const std::vector<std::string> kSuiteNames = [] {
  std::vector<std::string> names;
  for (const SuiteDef& def : kSuites) names.push_back(def.name);
  return names;
}();

bool SuiteReport::passed() const {
  for (const Violation& v : violations)
    if (!v.expected) return false;
  return true;
}

std::string SuiteReport::summary() const {
  std::ostringstream out;
  char buf[64];
  long unexpected = 0;
  for (const Violation& v : violations)
    if (!v.expected) ++unexpected;
  out << "suite: " << suite << "\n";
  out << "seed: " << seed << "\n";
  out << "trials: " << trials << "\n";
  std::snprintf(buf, sizeof buf, "%.6e", max_slack);
  out << "max-slack: " << buf << "\n";
  out << "expected-negatives: " << expected_negatives << "\n";
  out << "unexpected-violations: " << unexpected << "\n";
  for (const Violation& v : violations) {
    std::snprintf(buf, sizeof buf, "%.6e", v.slack);
    out << "violation trial=" << v.trial << " check=" << v.check
        << " slack=" << buf << " expected=" << (v.expected ? "yes" : "no")
        << "\n";
  }
  out << "status: " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json viols = nlohmann::json::array();
  for (const Violation& v : violations) {
    viols.push_back({{"trial", v.trial},
                     {"check", v.check},
                     {"slack", v.slack},
                     {"expected", v.expected},
                     {"inputs", v.inputs}});
  }
  return nlohmann::json{{"suite", suite},
                        {"seed", seed},
                        {"trials", trials},
                        {"max_slack", max_slack},
                        {"expected_negatives", expected_negatives},
                        {"violations", std::move(viols)},
                        {"passed", passed()}};
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  const SuiteDef* def = find_suite(name);
  if (!def) throw std::invalid_argument("unknown suite: " + name);
  const int trials =
      def->fixed_trials > 0 ? def->fixed_trials : std::max(params.trials, 1);

  std::vector<Recorder> outs(trials);
  const bool par = params.parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (int t = 0; t < trials; ++t) {
    Recorder& rec = outs[t];
    rec.trial = t;
    try {
      def->fn(t, params, rec);
    } catch (const std::exception& e) {
      rec.force("trial-exception", {{"what", e.what()}});
    }
  }

  SuiteReport report;
  report.suite = name;
  report.seed = params.seed;
  report.trials = trials;
  report.max_slack = -std::numeric_limits<double>::infinity();
  long expected_kept = 0;
  std::set<std::string> demos_found;
  for (Recorder& rec : outs) {
    report.max_slack = std::max(report.max_slack, rec.max_slack);
    report.expected_negatives += rec.expected;
    for (Violation& v : rec.violations) {
      if (v.expected) {
        if (v.check == "nonmetric-demo")
          demos_found.insert(v.inputs.at("legacy").get<std::string>());
        if (expected_kept >= kExpectedKept) continue;
        ++expected_kept;
      }
      report.violations.push_back(std::move(v));
    }
  }

  auto synthetic = [&](const std::string& check) {
    report.violations.push_back(
        {trials, check, 1.0, {{"check", check}}, false});
    report.max_slack = std::max(report.max_slack, 1.0);
  };
  if (name == "duality" && report.expected_negatives == 0)
    synthetic("duality-counterexample-missing");
  if (name == "nonmetric-demos") {
    for (LegacyMetric k : {LegacyMetric::NaiveProjectionF,
                           LegacyMetric::Martin, LegacyMetric::MaxCorrelation})
      if (!demos_found.count(legacy_name(k)))
        synthetic("nonmetric-demo-missing:" + legacy_name(k));
  }
  if (params.inject_bug) synthetic("injected-bug");
  return report;
}

double replay_violation(const std::string& suite, const nlohmann::json& inputs) {
  if (!find_suite(suite)) throw std::invalid_argument("unknown suite: " + suite);
  return compute_check(inputs.at("check").get<std::string>(), inputs);
}

}  // namespace subgeo
