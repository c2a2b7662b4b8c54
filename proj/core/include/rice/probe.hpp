#pragma once

// Monothetic sensitivity analysis: sweep the distance per light state,
// keep the grid points around every rounded-output transition plus the
// endpoints, and assemble the result into a synthesis job.

#include <vector>

#include "rice/job.hpp"
#include "rice/oracle.hpp"

namespace rice {

struct LightState {
  double rd = 0.0;
  double am = 0.0;
  double gr = 0.0;
};

struct Sweep {
  LightState state;
  std::vector<double> points;   // i/steps for i in 0..steps
  std::vector<double> outputs;  // rounded predictions, each 0.0 or 1.0
};

struct CriticalExample {
  Binding input;   // rd, am, gr, dist
  Binding output;  // go
};

// Evaluates the oracle along the distance grid with the lights fixed;
// outputs are rounded to the nearest integer, ties to even.
Sweep distance_sweep(const LightState& state, int steps, Oracle& oracle);

// Both endpoints always, plus both members of every adjacent pair whose
// outputs differ; ordered by dist, duplicates removed; all values recorded
// to two decimals.
std::vector<CriticalExample> critical_points(const Sweep& sweep);

// The three regular one-hot states, or all eight on/off combinations
// (descending binary order: 111, 110, ..., 000).
enum class StateSet { regular, all_combinations };
std::vector<LightState> probe_states(StateSet set);

// Full probe: one sweep per state, all critical examples as positive
// observables, constant pool = the distinct dist and go values.
SynthesisJob probe(Oracle& oracle, int steps, const std::vector<LightState>& states);

}  // namespace rice
