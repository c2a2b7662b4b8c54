// Sensitivity probing: distance sweeps, critical-point extraction, and job
// assembly.

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rice/errors.hpp"
#include "rice/job.hpp"
#include "rice/oracle.hpp"
#include "rice/probe.hpp"

using namespace rice;
using namespace rice::testing;

namespace {

LightState light(double rd, double am, double gr) {
  LightState s;
  s.rd = rd;
  s.am = am;
  s.gr = gr;
  return s;
}

// Scores chosen so rounding hits the tie case at one grid point.
class TieOracle final : public Oracle {
 public:
  double predict(const FeatureVector& f) override { return f.dist == 0.5 ? 0.5 : 0.9; }
};

}  // namespace

TEST_CASE("sweeps walk the grid and round ties to even") {
  TieOracle tie;
  Sweep sweep = distance_sweep(light(1, 0, 0), 10, tie);
  REQUIRE(sweep.points.size() == 11);
  REQUIRE(sweep.outputs.size() == 11);
  for (int i = 0; i <= 10; ++i) CHECK(sweep.points[i] == doctest::Approx(i / 10.0));
  for (int i = 0; i <= 10; ++i) {
    // 0.5 rounds to 0 (ties to even); 0.9 rounds to 1.
    double expected = (i == 5) ? 0.0 : 1.0;
    CHECK(sweep.outputs[i] == expected);
  }
}

TEST_CASE("critical points keep endpoints and transition pairs") {
  StepOracle step(0.595, 0.085, 0.785);
  Sweep red = distance_sweep(light(1, 0, 0), 100, step);
  auto criticals = critical_points(red);
  // Endpoints plus the 0.59 -> 0.60 flip.
  REQUIRE(criticals.size() == 4);
  CHECK(criticals[0].input.at(ArgName("dist")) == doctest::Approx(0.0));
  CHECK(criticals[0].output.at(ArgName("go")) == doctest::Approx(0.0));
  CHECK(criticals[1].input.at(ArgName("dist")) == doctest::Approx(0.59));
  CHECK(criticals[1].output.at(ArgName("go")) == doctest::Approx(0.0));
  CHECK(criticals[2].input.at(ArgName("dist")) == doctest::Approx(0.6));
  CHECK(criticals[2].output.at(ArgName("go")) == doctest::Approx(1.0));
  CHECK(criticals[3].input.at(ArgName("dist")) == doctest::Approx(1.0));
  CHECK(criticals[3].output.at(ArgName("go")) == doctest::Approx(1.0));
  for (const CriticalExample& c : criticals) {
    CHECK(c.input.at(ArgName("rd")) == doctest::Approx(1.0));
    CHECK(c.input.at(ArgName("am")) == doctest::Approx(0.0));
    CHECK(c.input.at(ArgName("gr")) == doctest::Approx(0.0));
  }

  Sweep amber = distance_sweep(light(0, 1, 0), 100, step);
  auto band = critical_points(amber);
  REQUIRE(band.size() == 6);
  double expect_dist[] = {0.0, 0.08, 0.09, 0.78, 0.79, 1.0};
  double expect_go[] = {1.0, 1.0, 0.0, 0.0, 1.0, 1.0};
  for (int i = 0; i < 6; ++i) {
    CHECK(band[i].input.at(ArgName("dist")) == doctest::Approx(expect_dist[i]));
    CHECK(band[i].output.at(ArgName("go")) == doctest::Approx(expect_go[i]));
  }
}

TEST_CASE("a constant sweep keeps only the endpoints") {
  StepOracle step(0.595, 0.085, 0.785);
  Sweep green = distance_sweep(light(0, 0, 1), 100, step);
  auto criticals = critical_points(green);
  REQUIRE(criticals.size() == 2);
  CHECK(criticals[0].input.at(ArgName("dist")) == doctest::Approx(0.0));
  CHECK(criticals[1].input.at(ArgName("dist")) == doctest::Approx(1.0));
}

TEST_CASE("tiny grids collapse transition pairs into the endpoints") {
  RuleOracle rule;
  Sweep sweep = distance_sweep(light(1, 0, 0), 1, rule);
  // Points 0.0 and 1.0 differ, and both are already endpoints.
  auto criticals = critical_points(sweep);
  REQUIRE(criticals.size() == 2);
}

TEST_CASE("grid values are recorded to two decimals") {
  RuleOracle rule;
  // steps=3 gives 0.333... and 0.666...; recorded as 0.33 and 0.67.
  Sweep sweep = distance_sweep(light(0, 1, 0), 3, rule);
  auto criticals = critical_points(sweep);
  bool saw_033 = false, saw_067 = false;
  for (const CriticalExample& c : criticals) {
    double d = c.input.at(ArgName("dist"));
    CHECK(std::fabs(d * 100 - std::rint(d * 100)) <= 1e-9);
    if (std::fabs(d - 0.33) < 1e-9) saw_033 = true;
    if (std::fabs(d - 0.67) < 1e-9) saw_067 = true;
  }
  CHECK(saw_033);
  CHECK(saw_067);
}

TEST_CASE("state sets enumerate in descending binary order") {
  auto regular = probe_states(StateSet::regular);
  REQUIRE(regular.size() == 3);
  CHECK(regular[0].rd == 1.0);
  CHECK(regular[1].am == 1.0);
  CHECK(regular[2].gr == 1.0);

  auto all = probe_states(StateSet::all_combinations);
  REQUIRE(all.size() == 8);
  for (int i = 0; i < 8; ++i) {
    int bits = 7 - i;
    CHECK(all[i].rd == ((bits & 4) ? 1.0 : 0.0));
    CHECK(all[i].am == ((bits & 2) ? 1.0 : 0.0));
    CHECK(all[i].gr == ((bits & 1) ? 1.0 : 0.0));
  }
}

TEST_CASE("probing the rule reproduces the golden job byte for byte") {
  RuleOracle rule;
  SynthesisJob job = probe(rule, 100, probe_states(StateSet::regular));
  CHECK(serialize_job(job) == read_file(std::string(RICE_GOLDEN_DIR) + "/rule_steps100.job"));
  CHECK(job.observables.size() == 12);
}

TEST_CASE("the pool collects the distinct dist and go values") {
  StepOracle step(0.595, 0.085, 0.785);
  SynthesisJob job = probe(step, 100, probe_states(StateSet::regular));
  std::vector<double> expected{0.0, 0.08, 0.09, 0.59, 0.6, 0.78, 0.79, 1.0};
  REQUIRE(job.constants.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(job.constants[i] == doctest::Approx(expected[i]));
}

TEST_CASE("irregular states reach the oracle and may be rejected by it") {
  RuleOracle rule;
  CHECK_THROWS_AS(probe(rule, 10, probe_states(StateSet::all_combinations)),
                  IrregularStateError);

  // A total oracle handles all eight states; every state contributes at
  // least its two endpoints.
  StepOracle step(0.595, 0.085, 0.785);
  SynthesisJob job = probe(step, 100, probe_states(StateSet::all_combinations));
  std::vector<std::vector<double>> seen;
  for (const Observable& row : job.observables) {
    std::vector<double> state{row.fields.at(ArgName("rd")), row.fields.at(ArgName("am")),
                              row.fields.at(ArgName("gr"))};
    bool found = false;
    for (const auto& s : seen) found = found || s == state;
    if (!found) seen.push_back(state);
  }
  CHECK(seen.size() == 8);
}
