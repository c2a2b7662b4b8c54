#include <benchmark/benchmark.h>

#include "rice/eval.hpp"
#include "rice/parse.hpp"
#include "rice/program.hpp"

namespace {

const char* kReferenceText =
    "ande(const(rd,1.0),proj(iif(ltValue(a,0.6),0.0,1.0),[a->dist,o->go]))";

rice::Valence red_valence() {
  using rice::ArgName;
  using rice::Mode;
  return rice::Valence({{ArgName("rd"), Mode::in},
                        {ArgName("dist"), Mode::in},
                        {ArgName("go"), Mode::out}});
}

void BM_ParseProgram(benchmark::State& state) {
  for (auto _ : state) {
    rice::Program p = rice::parse_program(kReferenceText);
    benchmark::DoNotOptimize(p);
  }
}

void BM_SerializeProgram(benchmark::State& state) {
  rice::Program p = rice::parse_program(kReferenceText);
  for (auto _ : state) {
    std::string text = p.to_text();
    benchmark::DoNotOptimize(text);
  }
}

// One full functional evaluation, sweeping the distance so both branches
// of the conditional get exercised.
void BM_Evaluate(benchmark::State& state) {
  rice::Program p = rice::parse_program(kReferenceText);
  rice::Valence v = red_valence();
  rice::ArgName rd("rd"), dist("dist");
  int i = 0;
  for (auto _ : state) {
    rice::Binding input;
    input.set(rd, 1.0);
    input.set(dist, (i++ % 101) / 100.0);
    auto out = rice::evaluate(p, input, v);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_ParseProgram);
BENCHMARK(BM_SerializeProgram);
BENCHMARK(BM_Evaluate);

BENCHMARK_MAIN();
