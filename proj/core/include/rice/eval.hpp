#pragma once

// Relational evaluation.
//
// A program is evaluated against a binding of the in-mode names.  Internally
// each node produces an ordered list of solutions; a solution carries the
// output bindings it commits to plus residual ltValue constraints on names
// that were not yet bound at the point the constraint was met.  The overall
// result is the first solution (ore is left-priority) that binds every
// out-mode name and whose residual constraints hold.

#include <optional>
#include <vector>

#include "rice/program.hpp"

namespace rice {

// Values within this distance are considered equal by const tests and by
// observable matching.
inline constexpr double kValueTolerance = 1e-9;

struct Residual {
  ArgName arg;
  double bound;  // pending test: value(arg) < bound
};

struct Solution {
  Binding outputs;
  std::vector<Residual> residuals;
};

// All solutions of p against a binding of (at least) the in-mode names,
// in priority order.  Low-level; most callers want evaluate().
std::vector<Solution> solutions(const Program& p, const Binding& input);

// Functional result: the out-name bindings of the first admissible solution,
// or nullopt when the relation has no tuple over the given inputs.
//
// Throws SignatureError when p mentions names outside the valence or when
// input does not bind exactly the in-mode names, and UnboundOutputError when
// a solution survives its residual checks without binding every out name.
std::optional<Binding> evaluate(const Program& p, const Binding& input, const Valence& valence);

}  // namespace rice
