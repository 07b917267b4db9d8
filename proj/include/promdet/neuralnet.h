// promdet/include/promdet/neuralnet.h

// Copyright 2026  The promdet Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Feed-forward binary classifier trained with Adam on binary cross-entropy.
// Layers: dense, relu, batchnorm, dropout, sigmoid. Everything runs in double
// precision on the CPU; a network is a plain value type and can be copied.

#ifndef PROMDET_NEURALNET_H_
#define PROMDET_NEURALNET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "promdet/common.h"

namespace promdet {

struct LayerSpec {
  enum class Kind { kDense, kRelu, kBatchNorm, kDropout, kSigmoid };
  Kind kind = Kind::kDense;
  std::size_t units = 0;  // dense only
  double rate = 0.0;      // dropout only

  static LayerSpec dense(std::size_t units) { return {Kind::kDense, units, 0.0}; }
  static LayerSpec relu() { return {Kind::kRelu, 0, 0.0}; }
  static LayerSpec batchnorm() { return {Kind::kBatchNorm, 0, 0.0}; }
  static LayerSpec dropout(double rate) { return {Kind::kDropout, 0, rate}; }
  static LayerSpec sigmoid() { return {Kind::kSigmoid, 0, 0.0}; }
  bool operator==(const LayerSpec &) const = default;
};

std::string to_string(const LayerSpec &spec);
/// Parses "dense64", "relu", "bn", "drop0.3", "sigmoid".
LayerSpec parse_layer_spec(const std::string &token);

struct NetConfig {
  std::vector<LayerSpec> layers;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  std::uint64_t seed = 17;
  std::string preset;
  double bn_momentum = 0.9;
  // Weight each class by n / (2 n_class) in the loss.
  bool class_weight = false;
};

/// dense64-relu-bn-drop0.3 / dense32 / dense32-relu-bn-drop0.3 / dense16 /
/// dense8 / dense1-sigmoid, 50 epochs.
NetConfig word_preset();
/// Eight ReLU hidden layers (128,128,64,64,32,32,16,8) then dense1-sigmoid,
/// 200 epochs.
NetConfig syllable_preset();

/// Throws Error(kInvalidArgument) for malformed configurations.
void validate_config(const NetConfig &config);

enum class Phase { kTrain, kInfer };

class Network {
 public:
  /// Builds an arbitrary layer stack; `build` adds the config checks.
  Network(std::vector<LayerSpec> layers, std::size_t input_dim, std::uint64_t seed,
          double bn_momentum = 0.9);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const;
  const std::vector<LayerSpec> &layers() const { return specs_; }

  /// Train mode applies dropout masks and batch statistics (and updates the
  /// running statistics); infer mode uses running statistics, no dropout.
  Eigen::MatrixXd forward(const Eigen::MatrixXd &x, Phase phase);
  /// Backpropagates d(loss)/d(output) of the last forward pass; parameter
  /// gradients are overwritten.
  Eigen::MatrixXd backward(const Eigen::MatrixXd &grad_out);

  /// Gradient-check hook: when false, dropout is the identity in train mode.
  void set_dropout_enabled(bool enabled) { dropout_enabled_ = enabled; }

  /// Trainable parameters and their gradients, in a stable order.
  std::vector<Eigen::MatrixXd *> parameters();
  std::vector<Eigen::MatrixXd *> gradients();

  // Direct access for fixtures and checkpoints. `layer` indexes layers().
  void set_dense(std::size_t layer, const Eigen::MatrixXd &weights,
                 const Eigen::RowVectorXd &bias);
  const Eigen::MatrixXd &dense_weights(std::size_t layer) const;

  std::string to_json() const;
  static Network from_json(const std::string &text);

 private:
  struct Layer {
    LayerSpec spec;
    // dense: w (in x out), b (1 x out); batchnorm: w = gamma, b = beta (1 x n).
    Eigen::MatrixXd w, b, dw, db;
    Eigen::RowVectorXd running_mean, running_var;
    // Forward caches.
    Eigen::MatrixXd input, output, mask, xhat;
    Eigen::RowVectorXd inv_std;
  };

  std::vector<LayerSpec> specs_;
  std::vector<Layer> layers_;
  std::size_t input_dim_;
  double bn_momentum_;
  bool dropout_enabled_ = true;
  bool last_phase_train_ = false;
  Rng dropout_rng_;
};

/// Validates `config` and builds the network for inputs of width `input_dim`.
/// Dense weights are He-initialized from the seed; biases and beta are zero,
/// gamma is one.
Network build(const NetConfig &config, std::size_t input_dim);

inline constexpr double kBceEpsilon = 1e-7;

/// -mean(w * (y log p + (1-y) log(1-p))) with p clamped to [eps, 1-eps].
double loss_bce(const Eigen::VectorXd &p, const std::vector<int> &y,
                const std::vector<double> &weights = {});
/// d(loss_bce)/dp; zero where p was clamped.
Eigen::VectorXd loss_bce_grad(const Eigen::VectorXd &p, const std::vector<int> &y,
                              const std::vector<double> &weights = {});

/// Max relative error between backpropagated parameter gradients and central
/// finite differences (step h) of the train-mode loss, with dropout off.
double gradient_check(const Network &net, const Eigen::MatrixXd &x, const std::vector<int> &y,
                      double h = 1e-5);

struct TrainReport {
  std::vector<double> loss;       // per epoch, full training set, infer mode
  std::vector<double> train_acc;  // per epoch, full training set, infer mode
  double final_accuracy = 0.0;    // set by the caller's evaluation
};

/// Adam (beta1 0.9, beta2 0.999, eps 1e-8) over shuffled mini-batches.
TrainReport train(Network &net, const Matrix &x, const std::vector<int> &y,
                  const NetConfig &config);

std::string train_report_csv(const TrainReport &report);

struct Prediction {
  std::vector<double> probabilities;
  std::vector<int> labels;
  double accuracy = 0.0;  // vs ground truth; NaN when none was given
};

/// Thresholds precomputed probabilities: label = 1 iff p >= threshold.
Prediction threshold_predictions(std::vector<double> probabilities,
                                 const std::vector<int> &truth = {}, double threshold = 0.5);

/// Infer-mode probabilities of `net`, then threshold_predictions.
Prediction predict(Network &net, const Matrix &x, const std::vector<int> &truth = {},
                   double threshold = 0.5);

}  // namespace promdet

#endif  // PROMDET_NEURALNET_H_
