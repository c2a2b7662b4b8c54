#pragma once

// Shared fixtures for the test binaries: reference programs, grid
// comparison, a deterministic step-function oracle, and a random program
// generator for fuzzing.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rice/errors.hpp"
#include "rice/eval.hpp"
#include "rice/oracle.hpp"
#include "rice/parse.hpp"
#include "rice/program.hpp"

namespace rice::testing {

inline Program reference_red_program() {
  return parse_program(
      "ande(const(rd,1.0),proj(iif(ltValue(a,0.6),0.0,1.0),[a->dist,o->go]))");
}

inline Valence red_slice_valence() {
  return Valence({{ArgName("rd"), Mode::in}, {ArgName("dist"), Mode::in},
                  {ArgName("go"), Mode::out}});
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// go produced on one input, or nullopt when the program yields nothing.
inline std::optional<double> go_value(const Program& p, const Valence& valence,
                                      const Binding& input) {
  try {
    std::optional<Binding> out = evaluate(p, input, valence);
    if (!out) return std::nullopt;
    return out->at(ArgName("go"));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Number of grid points dist = i/steps (with the program's light at 1.0 and
// any other mentioned lights at 0.0) where the two programs differ on go.
inline int grid_disagreements(const Program& a, const Valence& va, const Program& b,
                              const Valence& vb, int steps = 100) {
  int diffs = 0;
  for (int i = 0; i <= steps; ++i) {
    double dist = static_cast<double>(i) / steps;
    auto input_for = [&](const Valence& v) {
      Binding input;
      for (const ArgName& name : v.in_names()) {
        if (name == ArgName("dist"))
          input.set(name, dist);
        else if (name == ArgName("rd"))
          input.set(name, 1.0);
        else
          input.set(name, 0.0);
      }
      return input;
    };
    std::optional<double> ga = go_value(a, va, input_for(va));
    std::optional<double> gb = go_value(b, vb, input_for(vb));
    bool equal = ga.has_value() == gb.has_value() &&
                 (!ga || std::abs(*ga - *gb) <= 1e-9);
    if (!equal) ++diffs;
  }
  return diffs;
}

// Deterministic total oracle with configurable decision boundaries: red
// stops strictly below red_cut, amber stops on the closed band
// [amber_lo, amber_hi], green always goes.  Irregular light states go.
class StepOracle final : public Oracle {
 public:
  StepOracle(double red_cut, double amber_lo, double amber_hi)
      : red_cut_(red_cut), amber_lo_(amber_lo), amber_hi_(amber_hi) {}

  double predict(const FeatureVector& f) override {
    if (f.rd >= 0.5 && f.am < 0.5 && f.gr < 0.5) return f.dist < red_cut_ ? 0.0 : 1.0;
    if (f.am >= 0.5 && f.rd < 0.5 && f.gr < 0.5)
      return f.dist >= amber_lo_ && f.dist <= amber_hi_ ? 0.0 : 1.0;
    return 1.0;
  }

 private:
  double red_cut_;
  double amber_lo_;
  double amber_hi_;
};

// Arbitrary well-formed program built from all six node kinds.
inline Program random_program(std::mt19937_64& rng, const std::vector<ArgName>& names,
                              const std::vector<double>& pool, int budget) {
  auto leaf = [&]() {
    const ArgName& name = names[rng() % names.size()];
    double v = pool[rng() % pool.size()];
    return rng() % 2 == 0 ? Program::constant(name, v) : Program::lt_value(name, v);
  };
  // Condition-class subtree: no iif anywhere inside.
  auto make_cc = [&](auto&& self, int b) -> Program {
    if (b <= 1) return leaf();
    switch (rng() % 3) {
      case 0: return Program::ande(self(self, b / 2), self(self, b - 1 - b / 2));
      case 1: return Program::ore(self(self, b / 2), self(self, b - 1 - b / 2));
      default: return self(self, b - 1);
    }
  };
  auto make = [&](auto&& self, int b) -> Program {
    if (b <= 1) return leaf();
    switch (rng() % 5) {
      case 0:
        return Program::iif(make_cc(make_cc, b - 1), pool[rng() % pool.size()],
                            pool[rng() % pool.size()]);
      case 1: {
        Program inner = self(self, b - 1);
        // Try a single random renaming; fall back to a bare wrapper when the
        // draw collides with the injectivity rules.
        const std::vector<ArgName>& args = inner.args();
        if (!args.empty() && rng() % 2 == 0) {
          const ArgName& from = args[rng() % args.size()];
          const ArgName& to = names[rng() % names.size()];
          try {
            return Program::proj(inner, {{from, to}});
          } catch (const WellFormednessError&) {
          }
        }
        return Program::proj(inner, {});
      }
      case 2: return Program::ande(self(self, b / 2), self(self, b - 1 - b / 2));
      case 3: return Program::ore(self(self, b / 2), self(self, b - 1 - b / 2));
      default: return self(self, b - 1);
    }
  };
  return make(make, budget);
}

inline bool solutions_equal(const std::vector<Solution>& a, const std::vector<Solution>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].outputs == b[i].outputs)) return false;
    if (a[i].residuals.size() != b[i].residuals.size()) return false;
    for (std::size_t j = 0; j < a[i].residuals.size(); ++j) {
      if (a[i].residuals[j].arg != b[i].residuals[j].arg) return false;
      if (std::abs(a[i].residuals[j].bound - b[i].residuals[j].bound) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace rice::testing
