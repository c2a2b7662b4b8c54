#pragma once

// Randomized agreement testing between a synthesized program and the
// black-box oracle it is meant to explain.

#include <cstdint>
#include <string>
#include <vector>

#include "rice/oracle.hpp"
#include "rice/program.hpp"

namespace rice {

struct Disagreement {
  FeatureVector input;
  double program_go = 0.0;
  double oracle_go = 0.0;
};

struct AgreementReport {
  int samples = 0;
  int disagreements = 0;
  double rate = 0.0;
  std::vector<Disagreement> examples;  // first disagreements seen, at most 20

  // Human-readable summary ending in a machine-readable
  // `disagreement_rate=<decimal>` line.
  std::string to_text() const;
};

// Draws `samples` inputs at random (dist uniform on [0,1], the lights a
// uniformly chosen regular state consistent with `region`), evaluates the
// program on the names it mentions and the oracle on the full feature
// vector, and counts inputs where the program's go differs from the
// oracle's rounded prediction.  `region` must fix every light the program
// does not mention; it may also pin dist or a mentioned light.  Throws
// SignatureError when the region leaves a light unconstrained or admits no
// regular state, and IncompleteExplanationError when the program fails to
// produce a go value for some sampled input.  Deterministic in `seed`.
AgreementReport agreement(const Program& p, Oracle& oracle, int samples,
                          std::uint64_t seed, const Binding& region = Binding{});

}  // namespace rice
