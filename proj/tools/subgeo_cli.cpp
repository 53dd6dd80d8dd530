// Command-line front end: distance tables, principal angles, geodesic
// sampling, worked-example reproduction, and the randomized check suites.
//
// Exit codes: 0 success, 1 failed checks/suites, 2 usage or parse errors,
// 3 ambient/field mismatch between input files, 4 geodesic request for a
// max-family metric.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subgeo/angle.hpp"
#include "subgeo/core.hpp"
#include "subgeo/json_io.hpp"
#include "subgeo/metrics.hpp"
#include "subgeo/paths.hpp"
#include "subgeo/principal.hpp"
#include "subgeo/suites.hpp"
#include "subgeo/worked_examples.hpp"

namespace {

using namespace subgeo;

constexpr double kRadToDeg = 57.29577951308232;

// Four significant digits with trailing zeros ("52.24 / 90.00" style);
// values below 1e-12 render as plain zero.
std::string sig4(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  const double a = std::abs(x);
  if (a < 1e-12) return "0.000";
  const int prec = std::max(0, 3 - static_cast<int>(std::floor(std::log10(a))));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

// Machine-mode scalars are rounded to ten significant digits.
double sig10(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  const double scale =
      std::pow(10.0, 9 - std::floor(std::log10(std::abs(x))));
  return std::round(x * scale) / scale;
}

std::string fmt4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// Only these kinds are angles; --degrees leaves the chordal lengths alone.
bool angle_valued(Metric kind) {
  return kind == Metric::Geodesic || kind == Metric::FubiniStudy ||
         kind == Metric::Asimov;
}

std::string entry_str(const Complex& z, Field field) {
  char buf[80];
  if (field == Field::Real) {
    std::snprintf(buf, sizeof buf, "% .6f", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "% .6f%+.6fi", z.real(), z.imag());
  }
  return buf;
}

void print_matrix(std::ostream& out, const Matrix& m, Field field,
                  const std::string& indent) {
  for (int r = 0; r < m.rows(); ++r) {
    out << indent;
    for (int c = 0; c < m.cols(); ++c)
      out << entry_str(m(r, c), field) << (c + 1 < m.cols() ? "  " : "");
    out << "\n";
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBSPACE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
    std::cerr << "warning: ignoring malformed SUBSPACE_SEED\n";
  }
  return SuiteParams().seed;
}

// Loads both operands; returns 0, or the exit code to bail out with.
int load_pair(const std::string& file_v, const std::string& file_w,
              Subspace* v, Subspace* w) {
  try {
    *v = read_subspace_file(file_v);
    *w = read_subspace_file(file_w);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (v->ambient() != w->ambient()) {
    std::cerr << "error: ambient dimensions differ (" << v->ambient()
              << " vs " << w->ambient() << ")\n";
    return 3;
  }
  if (v->field() != w->field()) {
    std::cerr << "error: scalar fields differ\n";
    return 3;
  }
  return 0;
}

const char* field_label(Field f) { return f == Field::Real ? "R" : "C"; }

// ---------------------------------------------------------------------------

struct DistOptions {
  std::string file_v, file_w;
  std::string metric = "all";
  bool legacy = false;
  bool degrees = false;
  bool json = false;
};

int cmd_dist(const DistOptions& opt) {
  Subspace v(0, Field::Real), w(0, Field::Real);
  if (int rc = load_pair(opt.file_v, opt.file_w, &v, &w)) return rc;

  std::vector<Metric> kinds;
  if (opt.metric == "all") {
    kinds.assign(std::begin(kAllMetrics), std::end(kAllMetrics));
  } else {
    Metric k = Metric::Geodesic;
    if (!metric_from_name(opt.metric, &k)) {
      std::cerr << "error: unknown metric kind: " << opt.metric << "\n";
      return 2;
    }
    kinds.push_back(k);
  }

  nlohmann::json out{{"command", "dist"},
                     {"ambient", v.ambient()},
                     {"field", v.field() == Field::Real ? "real" : "complex"},
                     {"dim_v", v.dim()},
                     {"dim_w", w.dim()},
                     {"metrics", nlohmann::json::array()}};
  if (!opt.json) {
    std::cout << "V: dim " << v.dim() << " of " << field_label(v.field())
              << "^" << v.ambient() << "   W: dim " << w.dim() << " of "
              << field_label(w.field()) << "^" << w.ambient() << "\n";
    std::cout << "kind    d(V,W) / d(W,V)"
              << "      sym-max    sym-min\n";
  }
  for (Metric kind : kinds) {
    const double fwd = asym_distance(kind, v, w);
    const double bwd = asym_distance(kind, w, v);
    const double smax = symmetrize(kind, v, w, SymMode::Max);
    const double smin = symmetrize(kind, v, w, SymMode::Min);
    if (opt.json) {
      out["metrics"].push_back({{"kind", metric_name(kind)},
                                {"forward", sig10(fwd)},
                                {"backward", sig10(bwd)},
                                {"sym_max", sig10(smax)},
                                {"sym_min", sig10(smin)}});
    } else {
      const double s = opt.degrees && angle_valued(kind) ? kRadToDeg : 1.0;
      char name[16];
      std::snprintf(name, sizeof name, "%-7s", metric_name(kind).c_str());
      std::cout << name << " " << sig4(s * fwd) << " / " << sig4(s * bwd)
                << "      " << sig4(s * smax) << "    " << sig4(s * smin)
                << "\n";
    }
  }

  if (opt.legacy) {
    if (!opt.json)
      std::cout << "legacy  d(V,W) / d(W,V)      triangle\n";
    out["legacy"] = nlohmann::json::array();
    for (LegacyMetric kind : kAllLegacyMetrics) {
      const double fwd = legacy_distance(kind, v, w);
      const double bwd = legacy_distance(kind, w, v);
      const TriangleStatus st = legacy_triangle_status(kind);
      const char* status = st == TriangleStatus::Holds
                               ? "holds"
                               : st == TriangleStatus::Fails ? "fails"
                                                             : "unknown";
      if (opt.json) {
        out["legacy"].push_back({{"kind", legacy_name(kind)},
                                 {"forward", sig10(fwd)},
                                 {"backward", sig10(bwd)},
                                 {"triangle", status}});
      } else {
        const double s =
            opt.degrees && kind == LegacyMetric::EqualDimFubiniStudy
                ? kRadToDeg
                : 1.0;
        char name[16];
        std::snprintf(name, sizeof name, "%-9s", legacy_name(kind).c_str());
        std::cout << name << " " << sig4(s * fwd) << " / " << sig4(s * bwd)
                  << "      " << status << "\n";
      }
    }
  }
  if (opt.json) std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct AnglesOptions {
  std::string file_v, file_w;
  bool json = false;
};

int cmd_angles(const AnglesOptions& opt) {
  Subspace v(0, Field::Real), w(0, Field::Real);
  if (int rc = load_pair(opt.file_v, opt.file_w, &v, &w)) return rc;
  const PrincipalDecomposition dec = principal_decomposition(v, w);

  if (opt.json) {
    nlohmann::json rad = nlohmann::json::array();
    nlohmann::json deg = nlohmann::json::array();
    for (int i = 0; i < dec.angles.size(); ++i) {
      rad.push_back(sig10(dec.angles(i)));
      deg.push_back(sig10(dec.angles(i) * kRadToDeg));
    }
    const nlohmann::json out{
        {"command", "angles"},
        {"angles_rad", std::move(rad)},
        {"angles_deg", std::move(deg)},
        {"basis_v",
         subspace_to_json(Subspace::from_orthonormal(dec.e, v.field()))},
        {"basis_w",
         subspace_to_json(Subspace::from_orthonormal(dec.f, w.field()))}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (dec.angles.size() == 0) {
    std::cout << "angles: (none)\n";
  } else {
    std::cout << "angles (radians):";
    for (int i = 0; i < dec.angles.size(); ++i)
      std::cout << " " << fmt4(dec.angles(i));
    std::cout << "\nangles (degrees):";
    for (int i = 0; i < dec.angles.size(); ++i)
      std::cout << " " << fmt4(dec.angles(i) * kRadToDeg);
    std::cout << "\n";
  }
  std::cout << "principal basis of V (columns):\n";
  print_matrix(std::cout, dec.e, v.field(), "  ");
  std::cout << "principal basis of W (columns):\n";
  print_matrix(std::cout, dec.f, w.field(), "  ");
  return 0;
}

// ---------------------------------------------------------------------------

struct GeodesicOptions {
  std::string file_v, file_w;
  std::string metric = "d_g";
  int samples = 11;
  std::string topology = "backward";
};

int cmd_geodesic(const GeodesicOptions& opt) {
  Metric kind = Metric::Geodesic;
  if (!metric_from_name(opt.metric, &kind)) {
    std::cerr << "error: unknown metric kind: " << opt.metric << "\n";
    return 2;
  }
  if (family_of(kind) == MetricFamily::Max) {
    std::cerr << "error: max-family kinds have no length structure; "
                 "no geodesic exists for "
              << metric_name(kind) << "\n";
    return 4;
  }
  if (opt.samples < 2) {
    std::cerr << "error: --samples must be at least 2 (endpoints)\n";
    return 2;
  }
  Topology topo = Topology::Backward;
  if (opt.topology == "forward") {
    topo = Topology::Forward;
  } else if (opt.topology != "backward") {
    std::cerr << "error: --topology must be backward or forward\n";
    return 2;
  }

  Subspace v(0, Field::Real), w(0, Field::Real);
  if (int rc = load_pair(opt.file_v, opt.file_w, &v, &w)) return rc;

  const Path path = minimal_geodesic(kind, v, w, topo);
  nlohmann::json samples = nlohmann::json::array();
  for (int i = 0; i < opt.samples; ++i) {
    const double t =
        static_cast<double>(i) / static_cast<double>(opt.samples - 1);
    samples.push_back(
        {{"t", sig10(t)}, {"subspace", subspace_to_json(path.at(t))}});
  }
  const nlohmann::json out{
      {"command", "geodesic"},
      {"metric", metric_name(kind)},
      {"type", path.has_contraction() ? "II" : "I"},
      {"topology", opt.topology},
      {"length", sig10(intrinsic_distance(kind, v, w))},
      {"samples", std::move(samples)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_examples(bool json) {
  const std::vector<WorkedExample> examples = run_worked_examples();
  bool all_ok = true;
  nlohmann::json out = nlohmann::json::array();
  for (const WorkedExample& ex : examples) {
    if (!json) std::cout << ex.name << ": " << ex.summary << "\n";
    for (const WorkedCheck& c : ex.checks) {
      const double err = std::abs(c.actual - c.expected);
      const bool ok = err <= std::max(c.tol, 1e-10);
      all_ok = all_ok && ok;
      if (json) {
        out.push_back({{"example", ex.name},
                       {"label", c.label},
                       {"expected", sig10(c.expected)},
                       {"actual", sig10(c.actual)},
                       {"error", sig10(err)},
                       {"pass", ok}});
      } else {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-42s expected %.12g actual %.12g  %s",
                      c.label.c_str(), c.expected, c.actual,
                      ok ? "pass" : "FAIL");
        std::cout << buf << "\n";
      }
    }
  }
  if (json) std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string suite = "all";
  int trials = 1000;
  std::uint64_t seed = 0;
  int nmax = 8;
  bool serial = false;
  bool inject_bug = false;
  bool json = false;
};

int cmd_check(const CheckOptions& opt) {
  std::vector<std::string> names;
  if (opt.suite == "all") {
    names = kSuiteNames;
  } else {
    bool known = false;
    for (const std::string& s : kSuiteNames) known = known || s == opt.suite;
    if (!known) {
      std::cerr << "error: unknown suite: " << opt.suite << "\n";
      return 2;
    }
    names.push_back(opt.suite);
  }

  SuiteParams params;
  params.seed = opt.seed;
  params.trials = opt.trials;
  params.n_max = opt.nmax;
  params.parallel = !opt.serial;
  params.inject_bug = opt.inject_bug;

  bool all_pass = true;
  nlohmann::json out = nlohmann::json::array();
  for (const std::string& name : names) {
    const SuiteReport report = run_suite(name, params);
    all_pass = all_pass && report.passed();
    if (opt.json) {
      out.push_back(report.to_json());
    } else {
      std::cout << report.summary() << "\n";
    }
  }
  if (opt.json) std::cout << out.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymmetric distances, angles and geodesics between linear "
               "subspaces of different dimensions"};
  app.require_subcommand(1);

  DistOptions dist;
  CLI::App* cdist = app.add_subcommand(
      "dist", "distance table between two subspace files");
  cdist->add_option("fileV", dist.file_v, "first subspace (JSON)")->required();
  cdist->add_option("fileW", dist.file_w, "second subspace (JSON)")->required();
  cdist->add_option("--metric", dist.metric, "metric kind or 'all'");
  cdist->add_flag("--legacy", dist.legacy, "also print the older distances");
  cdist->add_flag("--degrees", dist.degrees,
                  "render angle-valued kinds in degrees");
  cdist->add_flag("--json", dist.json, "machine-readable output");

  AnglesOptions angles;
  CLI::App* cang = app.add_subcommand(
      "angles", "principal angles and principal bases");
  cang->add_option("fileV", angles.file_v, "first subspace (JSON)")->required();
  cang->add_option("fileW", angles.file_w, "second subspace (JSON)")
      ->required();
  cang->add_flag("--json", angles.json, "machine-readable output");

  GeodesicOptions geo;
  CLI::App* cgeo = app.add_subcommand(
      "geodesic", "sample a minimal path between two subspaces (JSON output)");
  cgeo->add_option("fileV", geo.file_v, "start subspace (JSON)")->required();
  cgeo->add_option("fileW", geo.file_w, "end subspace (JSON)")->required();
  cgeo->add_option("--metric", geo.metric, "l2- or wedge-family kind");
  cgeo->add_option("--samples", geo.samples, "number of sampled bases (>= 2)");
  cgeo->add_option("--topology", geo.topology,
                   "side taken at jump instants: backward | forward");
  bool geo_json = false;
  cgeo->add_flag("--json", geo_json, "output is always JSON; accepted for "
                                     "symmetry");

  bool ex_json = false;
  CLI::App* cex = app.add_subcommand(
      "examples", "recompute the built-in worked examples against their "
                  "frozen expected values");
  cex->add_flag("--json", ex_json, "machine-readable output");

  CheckOptions check;
  check.seed = default_seed();
  CLI::App* cchk = app.add_subcommand(
      "check", "run randomized property suites");
  cchk->add_option("--suite", check.suite, "suite name or 'all'");
  cchk->add_option("--trials", check.trials, "trials per suite");
  cchk->add_option("--seed", check.seed,
                   "base seed (default from SUBSPACE_SEED)");
  cchk->add_option("--nmax", check.nmax, "ambient dimension");
  cchk->add_flag("--serial", check.serial, "disable parallel trials");
  cchk->add_flag("--inject-bug", check.inject_bug,
                 "test hook: force one artificial violation");
  cchk->add_flag("--json", check.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cdist->parsed()) return cmd_dist(dist);
    if (cang->parsed()) return cmd_angles(angles);
    if (cgeo->parsed()) return cmd_geodesic(geo);
    if (cex->parsed()) return cmd_examples(ex_json);
    if (cchk->parsed()) return cmd_check(check);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
