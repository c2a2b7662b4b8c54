#pragma once

// Enumerative inductive synthesis: stream programs of nondecreasing size
// that satisfy every observable of a job, smallest first.
//
// The search is bottom-up iterative deepening on node count.  Subprograms
// are tabled per size and deduplicated by observational equivalence on the
// job's rows (keyed by argument set + per-row solution lists), which keeps
// tables small without giving up minimality: any composition built from a
// discarded subprogram behaves identically to one built from its retained
// representative of equal or smaller size.  Yielded candidates are always
// re-checked with the reference evaluator.

#include <cstdint>
#include <functional>
#include <vector>

#include "rice/job.hpp"

namespace rice {

struct SynthConfig {
  int max_size = 12;          // node-count bound
  int max_programs = 1;       // stop after this many yields
  double time_budget = 60.0;  // seconds
  bool enable_ore = true;     // primitive-set toggle
};

struct Candidate {
  Program program;
  int size = 0;
};

// Why the stream ended before producing max_programs candidates.
enum class Exhaustion {
  none,        // enough candidates were found
  size_bound,  // every program up to max_size was considered
  time_bound,  // the time budget ran out first
};

struct SynthesisResult {
  std::vector<Candidate> candidates;  // in yield order
  Exhaustion exhaustion = Exhaustion::none;
  int last_completed_size = 0;  // largest size class fully enumerated
};

// Enumerates candidates in canonical order (size, then structural order),
// invoking on_candidate per yield until it returns false or limits hit.
// Pre: the job has at least one positive observable, at least one in-mode
// name, and exactly one out-mode name.  Throws Error on a violated
// precondition.
SynthesisResult enumerate(const SynthesisJob& job, const SynthConfig& cfg,
                          const std::function<bool(const Candidate&)>& on_candidate = {});

// Head of the stream: at most one candidate.
SynthesisResult first_explanation(const SynthesisJob& job, const SynthConfig& cfg);

}  // namespace rice
