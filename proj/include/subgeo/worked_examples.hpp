#pragma once

#include <string>
#include <vector>

namespace subgeo {

// One computed quantity of a built-in configuration next to its closed form.
struct WorkedCheck {
  std::string label;
  double expected;
  double actual;
  double tol;
  bool pass() const;
};

struct WorkedExample {
  std::string name;
  std::string summary;
  std::vector<WorkedCheck> checks;
  bool pass() const;
};

// Built-in configurations whose every quantity has a closed form:
//   r5-two-planes   a 2-subspace of R^5 against a coordinate 3-subspace,
//                   principal angles pi/6 and pi/4; asymmetric angles both
//                   ways, d_BC, and its coordinate split
//   r5-raw-bases    non-orthonormal spanning sets in R^5; the Gram route
//                   against the exterior route, blade norms, contractions
//   c3-line-plane   complex line against a complex plane in C^3; complex and
//                   realified angles and projection factors
std::vector<WorkedExample> run_worked_examples();

}  // namespace subgeo
