#include <benchmark/benchmark.h>

#include "rice/dataset.hpp"
#include "rice/mlp.hpp"

namespace {

void BM_Predict(benchmark::State& state) {
  rice::MlpModel m = rice::init_model(1);
  int i = 0;
  for (auto _ : state) {
    rice::FeatureVector f{1.0, 0.0, 0.0, (i++ % 101) / 100.0};
    benchmark::DoNotOptimize(m.predict(f));
  }
}

void BM_GenerateDataset(benchmark::State& state) {
  for (auto _ : state) {
    rice::Dataset d = rice::generate_dataset(static_cast<int>(state.range(0)), 0.02, 7);
    benchmark::DoNotOptimize(d);
  }
}

void BM_TrainEpoch(benchmark::State& state) {
  rice::Dataset d = rice::generate_dataset(static_cast<int>(state.range(0)), 0.02, 7);
  rice::TrainOptions opt;
  opt.epochs = 1;
  opt.seed = 7;
  for (auto _ : state) {
    rice::TrainResult r = rice::train(d, opt);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_Predict);
BENCHMARK(BM_GenerateDataset)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainEpoch)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
