#pragma once

// End-to-end orchestration: train a decision model (or take the hand-coded
// rule directly), probe it, slice the probe job per light, synthesize a
// minimal program per slice, render each program as clauses and English,
// and measure agreement between each program and the probed model.  All
// artifacts land in a run directory; reruns with identical configuration
// reproduce it byte for byte except for the timestamped log.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rice/job.hpp"
#include "rice/synth.hpp"
#include "rice/validate.hpp"

namespace rice {

struct PipelineConfig {
  std::string out_dir;
  std::uint64_t seed = 7;
  int steps = 100;           // probe resolution
  int dataset_n = 50000;
  double noise = 0.02;
  int epochs = 10;
  bool use_rule_oracle = false;  // probe the rule directly, skipping training
  double threshold = 0.02;       // max acceptable disagreement rate
  double time_budget = 60.0;     // seconds per synthesis size rung
  int validate_samples = 10000;
  bool ascii = false;            // ASCII clause rendering
};

struct LightRun {
  std::string light;  // "red", "amber", "green"
  SynthesisJob job;
  Exhaustion exhaustion = Exhaustion::none;
  std::optional<Candidate> candidate;
  int found_at_max_size = 0;  // size bound of the rung that produced it
  std::optional<AgreementReport> report;
};

struct PipelineResult {
  std::string out_dir;
  double test_accuracy = -1.0;  // -1.0 when training was skipped
  double rule_accuracy = -1.0;
  std::vector<LightRun> lights;
  bool ok = false;  // every synthesis succeeded and every rate <= threshold
};

// Runs every stage, writing dataset.csv, model.txt, probe.pl, <light>.pl,
// <light>.prog, <light>.clauses.txt, <light>.english.txt, validation.txt,
// and run.log under cfg.out_dir.  A stage failure is rethrown with the
// stage name attached; artifacts written so far are left in place.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace rice
