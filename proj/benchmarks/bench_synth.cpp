#include <benchmark/benchmark.h>

#include "rice/job.hpp"
#include "rice/oracle.hpp"
#include "rice/probe.hpp"
#include "rice/synth.hpp"

namespace {

// The standard small workload: explain the red light's behaviour from a
// fresh sensitivity probe of the ground-truth rule.
rice::SynthesisJob red_slice_job() {
  rice::RuleOracle rule;
  rice::SynthesisJob job = rice::probe(rule, 100, rice::probe_states(rice::StateSet::regular));
  return rice::slice(job, {{rice::ArgName("rd"), 1.0}},
                     {rice::ArgName("am"), rice::ArgName("gr")});
}

void BM_FirstExplanation(benchmark::State& state) {
  rice::SynthesisJob job = red_slice_job();
  for (auto _ : state) {
    rice::SynthesisResult r = rice::first_explanation(job, rice::SynthConfig{});
    benchmark::DoNotOptimize(r);
  }
}

// Exhausting a size bound nobody can satisfy measures raw enumeration and
// pruning throughput rather than time-to-first-hit.
void BM_ExhaustSizeBound(benchmark::State& state) {
  rice::SynthesisJob job = red_slice_job();
  rice::SynthConfig cfg;
  cfg.max_size = static_cast<int>(state.range(0));
  cfg.max_programs = 1 << 20;  // never the binding limit: drain the stream
  for (auto _ : state) {
    rice::SynthesisResult r =
        rice::enumerate(job, cfg, [](const rice::Candidate&) { return true; });
    benchmark::DoNotOptimize(r);
  }
}

void BM_Probe(benchmark::State& state) {
  rice::RuleOracle rule;
  for (auto _ : state) {
    rice::SynthesisJob job =
        rice::probe(rule, 100, rice::probe_states(rice::StateSet::regular));
    benchmark::DoNotOptimize(job);
  }
}

}  // namespace

BENCHMARK(BM_FirstExplanation)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustSizeBound)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Probe);

BENCHMARK_MAIN();
