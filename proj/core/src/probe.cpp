#include "rice/probe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"

namespace rice {

Sweep distance_sweep(const LightState& state, int steps, Oracle& oracle) {
  if (steps < 1) throw Error("steps must be at least 1");
  Sweep sweep;
  sweep.state = state;
  sweep.points.reserve(static_cast<std::size_t>(steps) + 1);
  sweep.outputs.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    double dist = static_cast<double>(i) / static_cast<double>(steps);
    sweep.points.push_back(dist);
    double raw = oracle.predict({state.rd, state.am, state.gr, dist});
    sweep.outputs.push_back(std::rint(raw));
  }
  return sweep;
}

std::vector<CriticalExample> critical_points(const Sweep& sweep) {
  if (sweep.points.empty()) throw Error("sweep is empty");
  std::set<std::size_t> indices{0, sweep.points.size() - 1};
  for (std::size_t i = 0; i + 1 < sweep.outputs.size(); ++i) {
    if (sweep.outputs[i] != sweep.outputs[i + 1]) {
      indices.insert(i);
      indices.insert(i + 1);
    }
  }
  std::vector<CriticalExample> out;
  for (std::size_t i : indices) {
    CriticalExample ex;
    ex.input.set(ArgName("rd"), round2(sweep.state.rd));
    ex.input.set(ArgName("am"), round2(sweep.state.am));
    ex.input.set(ArgName("gr"), round2(sweep.state.gr));
    ex.input.set(ArgName("dist"), round2(sweep.points[i]));
    ex.output.set(ArgName("go"), round2(sweep.outputs[i]));
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<LightState> probe_states(StateSet set) {
  if (set == StateSet::regular)
    return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  std::vector<LightState> states;
  for (int bits = 7; bits >= 0; --bits)
    states.push_back({static_cast<double>((bits >> 2) & 1), static_cast<double>((bits >> 1) & 1),
                      static_cast<double>(bits & 1)});
  return states;
}

SynthesisJob probe(Oracle& oracle, int steps, const std::vector<LightState>& states) {
  SynthesisJob job;
  job.valence = Valence({{ArgName("rd"), Mode::in},
                         {ArgName("am"), Mode::in},
                         {ArgName("gr"), Mode::in},
                         {ArgName("dist"), Mode::in},
                         {ArgName("go"), Mode::out}});

  std::vector<double> pool;
  for (const auto& state : states) {
    Sweep sweep = distance_sweep(state, steps, oracle);
    for (auto& ex : critical_points(sweep)) {
      Observable row;
      row.positive = true;
      for (const auto& [name, value] : ex.input.entries()) row.fields.set(name, value);
      for (const auto& [name, value] : ex.output.entries()) row.fields.set(name, value);
      pool.push_back(ex.input.at(ArgName("dist")));
      pool.push_back(ex.output.at(ArgName("go")));
      job.observables.push_back(std::move(row));
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  job.constants = std::move(pool);
  return job;
}

}  // namespace rice
