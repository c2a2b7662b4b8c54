#pragma once

// The trainable decision model: a fixed 4-11-11-1 feedforward network with
// rectifier hidden layers and a logistic output, trained by mini-batch
// gradient descent with adaptive per-parameter step sizes (Adam) on binary
// cross-entropy.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rice/dataset.hpp"
#include "rice/oracle.hpp"

namespace rice {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major

  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

struct MlpModel {
  static constexpr std::array<int, 4> kLayerSizes{4, 11, 11, 1};

  std::array<Matrix, 3> weights;  // weights[i]: kLayerSizes[i+1] x kLayerSizes[i]
  std::array<std::vector<double>, 3> biases;

  // Logistic output in (0,1).
  double predict(const FeatureVector& f) const;
};

// Seeded He-uniform initialization.
MlpModel init_model(std::uint64_t seed);

// Mean binary cross-entropy over rows plus its gradient, computed
// analytically; layout mirrors the model.  Exposed for the training loop and
// for finite-difference verification.
struct Gradients {
  std::array<Matrix, 3> weights;
  std::array<std::vector<double>, 3> biases;
};
double loss_and_gradients(const MlpModel& m, const std::vector<DataRow>& rows, Gradients& out);
double mean_loss(const MlpModel& m, const std::vector<DataRow>& rows);

struct TrainOptions {
  double split = 0.9;
  int epochs = 10;
  std::uint64_t seed = 0;
  int batch_size = 64;
  double learning_rate = 0.01;
};

struct TrainResult {
  MlpModel model;
  // Fraction of held-out rows where the rounded prediction equals the stored
  // (possibly noise-flipped) label.
  double test_accuracy = 0.0;
  // Fraction of held-out rows where the rounded prediction equals the
  // noise-free rule label; measures generalization past the label noise.
  double rule_accuracy = 0.0;
  double final_loss = 0.0;
};

// Trains on the first split*N rows, evaluates on the rest.  Throws
// TrainingError on divergence (non-finite loss) or a degenerate split.
TrainResult train(const Dataset& d, const TrainOptions& options);

// Text persistence: header `mlp 4 11 11 1`, then for each layer i a
// `layer <i> <rows> <cols>` block of row-major shortest round-trip decimals
// and a `bias <i> <len>` line.  load(save(m)) reproduces identical
// predictions bit for bit.
void save_weights(const MlpModel& m, const std::string& path);
MlpModel load_weights(const std::string& path);

class MlpOracle final : public Oracle {
 public:
  explicit MlpOracle(MlpModel model) : model_(std::move(model)) {}
  double predict(const FeatureVector& f) override { return model_.predict(f); }
  const MlpModel& model() const { return model_; }

 private:
  MlpModel model_;
};

}  // namespace rice
