#include "subgeo/json_io.hpp"

#include <cmath>
#include <fstream>

namespace subgeo {

namespace {

Complex parse_entry(const nlohmann::json& e, Field field) {
  if (e.is_number()) {
    const double x = e.get<double>();
    if (!std::isfinite(x)) throw ParseError("non-finite entry");
    return Complex(x, 0.0);
  }
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    if (field == Field::Real)
      throw ParseError("complex entry in a real-field file");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError("non-finite entry");
    return Complex(re, im);
  }
  throw ParseError("entry must be a number or an [re, im] pair");
}

}  // namespace

Subspace subspace_from_json(const nlohmann::json& j, const Tolerances& tol) {
  if (!j.is_object()) throw ParseError("subspace file must be a JSON object");
  if (!j.contains("field") || !j["field"].is_string())
    throw ParseError("missing \"field\"");
  const std::string f = j["field"].get<std::string>();
  Field field;
  if (f == "real") field = Field::Real;
  else if (f == "complex") field = Field::Complex;
  else throw ParseError("field must be \"real\" or \"complex\"");

  if (!j.contains("ambient") || !j["ambient"].is_number_integer())
    throw ParseError("missing integer \"ambient\"");
  const int n = j["ambient"].get<int>();
  if (n < 0) throw ParseError("ambient must be nonnegative");

  if (!j.contains("vectors") || !j["vectors"].is_array())
    throw ParseError("missing \"vectors\" array");
  const auto& vecs = j["vectors"];
  Matrix m(n, vecs.size());
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    if (!vecs[k].is_array() || static_cast<int>(vecs[k].size()) != n)
      throw ParseError("each vector must have exactly \"ambient\" entries");
    for (int i = 0; i < n; ++i) m(i, k) = parse_entry(vecs[k][i], field);
  }
  return Subspace::from_spanning(m, field, tol);
}

Subspace read_subspace_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return subspace_from_json(j, tol);
}

nlohmann::json subspace_to_json(const Subspace& s) {
  nlohmann::json j;
  j["field"] = s.field() == Field::Real ? "real" : "complex";
  j["ambient"] = s.ambient();
  nlohmann::json vecs = nlohmann::json::array();
  for (int k = 0; k < s.dim(); ++k) {
    nlohmann::json v = nlohmann::json::array();
    for (int i = 0; i < s.ambient(); ++i) {
      const Complex z = s.basis()(i, k);
      if (s.field() == Field::Real) v.push_back(z.real());
      else v.push_back(nlohmann::json::array({z.real(), z.imag()}));
    }
    vecs.push_back(std::move(v));
  }
  j["vectors"] = std::move(vecs);
  return j;
}

void write_subspace_file(const std::string& path, const Subspace& s) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << subspace_to_json(s).dump(2) << "\n";
}

}  // namespace subgeo
