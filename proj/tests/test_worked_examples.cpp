#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "subgeo/worked_examples.hpp"

using namespace subgeo;

TEST_CASE("every frozen check holds at its own tolerance") {
  const std::vector<WorkedExample> examples = run_worked_examples();
  REQUIRE(examples.size() == 3);
  std::set<std::string> names;
  for (const WorkedExample& ex : examples) {
    names.insert(ex.name);
    CHECK(!ex.checks.empty());
    for (const WorkedCheck& c : ex.checks) {
      CAPTURE(ex.name);
      CAPTURE(c.label);
      CAPTURE(c.expected);
      CAPTURE(c.actual);
      CHECK(c.pass());
    }
    CHECK(ex.pass());
  }
  CHECK(names.count("r5-two-planes") == 1);
  CHECK(names.count("r5-raw-bases") == 1);
  CHECK(names.count("c3-line-plane") == 1);
}

TEST_CASE("the tight checks really are tight") {
  // at least one check per example demands 1e-12 or exact agreement
  for (const WorkedExample& ex : run_worked_examples()) {
    bool tight = false;
    for (const WorkedCheck& c : ex.checks) tight = tight || c.tol <= 1e-12;
    CAPTURE(ex.name);
    CHECK(tight);
  }
}
