#include "rice/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"

namespace rice {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Stable binary cross-entropy in terms of the logit.
double bce_from_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::fabs(z)));
}

struct Activations {
  std::array<double, 4> input;
  std::array<double, 11> h1, h2;
  double logit = 0.0;
};

double forward(const MlpModel& m, const FeatureVector& f, Activations& act) {
  act.input = {f.rd, f.am, f.gr, f.dist};
  for (int j = 0; j < 11; ++j) {
    double z = m.biases[0][static_cast<std::size_t>(j)];
    for (int i = 0; i < 4; ++i) z += m.weights[0].at(j, i) * act.input[static_cast<std::size_t>(i)];
    act.h1[static_cast<std::size_t>(j)] = z > 0.0 ? z : 0.0;
  }
  for (int j = 0; j < 11; ++j) {
    double z = m.biases[1][static_cast<std::size_t>(j)];
    for (int i = 0; i < 11; ++i) z += m.weights[1].at(j, i) * act.h1[static_cast<std::size_t>(i)];
    act.h2[static_cast<std::size_t>(j)] = z > 0.0 ? z : 0.0;
  }
  double z = m.biases[2][0];
  for (int i = 0; i < 11; ++i) z += m.weights[2].at(0, i) * act.h2[static_cast<std::size_t>(i)];
  act.logit = z;
  return z;
}

Matrix zeros(int rows, int cols) {
  Matrix m;
  m.rows = rows;
  m.cols = cols;
  m.values.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  return m;
}

Gradients zero_gradients() {
  Gradients g;
  const auto& s = MlpModel::kLayerSizes;
  for (int l = 0; l < 3; ++l) {
    g.weights[static_cast<std::size_t>(l)] = zeros(s[static_cast<std::size_t>(l) + 1], s[static_cast<std::size_t>(l)]);
    g.biases[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(s[static_cast<std::size_t>(l) + 1]), 0.0);
  }
  return g;
}

}  // namespace

double MlpModel::predict(const FeatureVector& f) const {
  Activations act;
  return sigmoid(forward(*this, f, act));
}

MlpModel init_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MlpModel m;
  const auto& s = MlpModel::kLayerSizes;
  for (int l = 0; l < 3; ++l) {
    int fan_in = s[static_cast<std::size_t>(l)];
    int fan_out = s[static_cast<std::size_t>(l) + 1];
    double limit = std::sqrt(6.0 / fan_in);
    m.weights[static_cast<std::size_t>(l)] = zeros(fan_out, fan_in);
    for (double& w : m.weights[static_cast<std::size_t>(l)].values)
      w = (2.0 * uniform_unit(rng()) - 1.0) * limit;
    m.biases[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(fan_out), 0.0);
  }
  return m;
}

double loss_and_gradients(const MlpModel& m, const std::vector<DataRow>& rows, Gradients& out) {
  out = zero_gradients();
  if (rows.empty()) return 0.0;
  double total = 0.0;
  const double inv = 1.0 / static_cast<double>(rows.size());
  Activations act;
  for (const auto& row : rows) {
    double z = forward(m, row.features, act);
    total += bce_from_logit(z, row.label);

    double dz = (sigmoid(z) - row.label) * inv;  // d(mean loss)/d logit
    std::array<double, 11> dh2{}, dh1{};
    for (int i = 0; i < 11; ++i) {
      out.weights[2].at(0, i) += dz * act.h2[static_cast<std::size_t>(i)];
      dh2[static_cast<std::size_t>(i)] = dz * m.weights[2].at(0, i);
    }
    out.biases[2][0] += dz;
    for (int j = 0; j < 11; ++j) {
      if (act.h2[static_cast<std::size_t>(j)] <= 0.0) continue;  // rectifier gate
      double g = dh2[static_cast<std::size_t>(j)];
      for (int i = 0; i < 11; ++i) {
        out.weights[1].at(j, i) += g * act.h1[static_cast<std::size_t>(i)];
        dh1[static_cast<std::size_t>(i)] += g * m.weights[1].at(j, i);
      }
      out.biases[1][static_cast<std::size_t>(j)] += g;
    }
    for (int j = 0; j < 11; ++j) {
      if (act.h1[static_cast<std::size_t>(j)] <= 0.0) continue;
      double g = dh1[static_cast<std::size_t>(j)];
      for (int i = 0; i < 4; ++i)
        out.weights[0].at(j, i) += g * act.input[static_cast<std::size_t>(i)];
      out.biases[0][static_cast<std::size_t>(j)] += g;
    }
  }
  return total * inv;
}

double mean_loss(const MlpModel& m, const std::vector<DataRow>& rows) {
  if (rows.empty()) return 0.0;
  double total = 0.0;
  Activations act;
  for (const auto& row : rows) total += bce_from_logit(forward(m, row.features, act), row.label);
  return total / static_cast<double>(rows.size());
}

namespace {

// Adam state and update for one parameter vector.
struct AdamState {
  std::vector<double> m, v;
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               double lr, int t) {
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  const double bc1 = 1.0 - std::pow(beta1, t);
  const double bc2 = 1.0 - std::pow(beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grads[i];
    state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grads[i] * grads[i];
    params[i] -= lr * (state.m[i] / bc1) / (std::sqrt(state.v[i] / bc2) + eps);
  }
}

}  // namespace

TrainResult train(const Dataset& d, const TrainOptions& options) {
  if (d.rows.empty()) throw TrainingError("dataset is empty");
  if (!(options.split > 0.0 && options.split < 1.0))
    throw TrainingError("split must be strictly between 0 and 1");
  auto n_train = static_cast<std::size_t>(options.split * static_cast<double>(d.rows.size()));
  if (n_train == 0 || n_train == d.rows.size())
    throw TrainingError("split leaves an empty partition");

  std::vector<DataRow> train_rows(d.rows.begin(), d.rows.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<DataRow> test_rows(d.rows.begin() + static_cast<std::ptrdiff_t>(n_train), d.rows.end());

  MlpModel model = init_model(options.seed);
  std::array<AdamState, 6> adam{
      AdamState(model.weights[0].values.size()), AdamState(model.biases[0].size()),
      AdamState(model.weights[1].values.size()), AdamState(model.biases[1].size()),
      AdamState(model.weights[2].values.size()), AdamState(model.biases[2].size())};

  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(train_rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const int batch = std::max(1, options.batch_size);
  std::vector<DataRow> minibatch;
  Gradients grads;
  double last_loss = 0.0;
  int step = 0;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(batch)) {
      minibatch.clear();
      std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(batch));
      for (std::size_t i = start; i < stop; ++i) minibatch.push_back(train_rows[order[i]]);
      last_loss = loss_and_gradients(model, minibatch, grads);
      if (!std::isfinite(last_loss))
        throw TrainingError("training diverged: loss is not finite at step " +
                            std::to_string(step));
      ++step;
      for (int l = 0; l < 3; ++l) {
        auto li = static_cast<std::size_t>(l);
        adam_step(model.weights[li].values, grads.weights[li].values, adam[li * 2], options.learning_rate, step);
        adam_step(model.biases[li], grads.biases[li], adam[li * 2 + 1], options.learning_rate, step);
      }
    }
  }

  TrainResult result;
  result.model = std::move(model);
  result.final_loss = last_loss;
  std::size_t agree_label = 0, agree_rule = 0;
  for (const auto& row : test_rows) {
    double rounded = std::rint(result.model.predict(row.features));
    if (rounded == row.label) ++agree_label;
    if (rounded == rule_label(row.features)) ++agree_rule;
  }
  result.test_accuracy = static_cast<double>(agree_label) / static_cast<double>(test_rows.size());
  result.rule_accuracy = static_cast<double>(agree_rule) / static_cast<double>(test_rows.size());
  return result;
}

void save_weights(const MlpModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "mlp 4 11 11 1\n";
  for (int l = 0; l < 3; ++l) {
    auto li = static_cast<std::size_t>(l);
    const Matrix& w = m.weights[li];
    out << "layer " << l << " " << w.rows << " " << w.cols << "\n";
    for (int r = 0; r < w.rows; ++r) {
      for (int c = 0; c < w.cols; ++c) out << (c ? " " : "") << format_constant(w.at(r, c));
      out << "\n";
    }
    out << "bias " << l << " " << m.biases[li].size() << "\n";
    for (std::size_t i = 0; i < m.biases[li].size(); ++i)
      out << (i ? " " : "") << format_constant(m.biases[li][i]);
    out << "\n";
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

namespace {

std::vector<double> parse_values(const std::string& line, int lineno) {
  std::vector<double> out;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    try {
      out.push_back(parse_number(token));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

}  // namespace

MlpModel load_weights(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) throw ParseError("unexpected end of weight file", lineno);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "mlp 4 11 11 1") throw ParseError("bad weight file header", lineno);
  MlpModel m;
  const auto& sizes = MlpModel::kLayerSizes;
  for (int l = 0; l < 3; ++l) {
    auto li = static_cast<std::size_t>(l);
    std::istringstream head(next_line());
    std::string kind;
    int idx = -1, rows = 0, cols = 0;
    if (!(head >> kind >> idx >> rows >> cols) || kind != "layer" || idx != l)
      throw ParseError("expected 'layer " + std::to_string(l) + " <rows> <cols>'", lineno);
    if (rows != sizes[li + 1] || cols != sizes[li])
      throw ShapeError("layer " + std::to_string(l) + " must be " + std::to_string(sizes[li + 1]) +
                       "x" + std::to_string(sizes[li]));
    Matrix w = Matrix{rows, cols, {}};
    for (int r = 0; r < rows; ++r) {
      auto values = parse_values(next_line(), lineno);
      if (static_cast<int>(values.size()) != cols)
        throw ParseError("expected " + std::to_string(cols) + " values in the row", lineno);
      w.values.insert(w.values.end(), values.begin(), values.end());
    }
    m.weights[li] = std::move(w);

    std::istringstream bias_head(next_line());
    int blen = 0;
    if (!(bias_head >> kind >> idx >> blen) || kind != "bias" || idx != l)
      throw ParseError("expected 'bias " + std::to_string(l) + " <len>'", lineno);
    if (blen != sizes[li + 1])
      throw ShapeError("bias " + std::to_string(l) + " must have " +
                       std::to_string(sizes[li + 1]) + " entries");
    auto values = parse_values(next_line(), lineno);
    if (static_cast<int>(values.size()) != blen)
      throw ParseError("expected " + std::to_string(blen) + " bias values", lineno);
    m.biases[li] = std::move(values);
  }
  return m;
}

}  // namespace rice
