// promdet/src/neuralnet.cc

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

#include "promdet/neuralnet.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace promdet {

namespace {

constexpr double kBnEpsilon = 1e-5;

using Kind = LayerSpec::Kind;

Eigen::MatrixXd row_matrix(const std::vector<double> &v) {
  Eigen::MatrixXd m(1, static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m(0, static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

std::vector<double> to_vec(const Eigen::MatrixXd &m) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

}  // namespace

std::string to_string(const LayerSpec &spec) {
  switch (spec.kind) {
    case Kind::kDense: return "dense" + std::to_string(spec.units);
    case Kind::kRelu: return "relu";
    case Kind::kBatchNorm: return "bn";
    case Kind::kDropout: return "drop" + format_double(spec.rate);
    case Kind::kSigmoid: return "sigmoid";
  }
  return "?";
}

LayerSpec parse_layer_spec(const std::string &token) {
  auto number_after = [&](std::size_t prefix) -> double {
    try {
      std::size_t used = 0;
      double v = std::stod(token.substr(prefix), &used);
      if (used != token.size() - prefix) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception &) {
      throw Error(ErrorKind::kParse, "bad layer token '" + token + "'");
    }
  };
  if (token == "relu") return LayerSpec::relu();
  if (token == "bn" || token == "batchnorm") return LayerSpec::batchnorm();
  if (token == "sigmoid") return LayerSpec::sigmoid();
  if (token.rfind("dense", 0) == 0) {
    const double u = number_after(5);
    if (u < 1 || u != std::floor(u))
      throw Error(ErrorKind::kParse, "bad dense width in '" + token + "'");
    return LayerSpec::dense(static_cast<std::size_t>(u));
  }
  if (token.rfind("drop", 0) == 0) return LayerSpec::dropout(number_after(4));
  throw Error(ErrorKind::kParse, "unknown layer '" + token + "'");
}

NetConfig word_preset() {
  NetConfig c;
  c.preset = "word";
  c.epochs = 50;
  c.layers = {LayerSpec::dense(64), LayerSpec::relu(),     LayerSpec::batchnorm(),
              LayerSpec::dropout(0.3), LayerSpec::dense(32), LayerSpec::dense(32),
              LayerSpec::relu(),       LayerSpec::batchnorm(), LayerSpec::dropout(0.3),
              LayerSpec::dense(16),    LayerSpec::dense(8),    LayerSpec::dense(1),
              LayerSpec::sigmoid()};
  return c;
}

NetConfig syllable_preset() {
  NetConfig c;
  c.preset = "syllable";
  c.epochs = 200;
  for (std::size_t w : {128, 128, 64, 64, 32, 32, 16, 8}) {
    c.layers.push_back(LayerSpec::dense(w));
    c.layers.push_back(LayerSpec::relu());
  }
  c.layers.push_back(LayerSpec::dense(1));
  c.layers.push_back(LayerSpec::sigmoid());
  return c;
}

void validate_config(const NetConfig &config) {
  const auto &l = config.layers;
  auto bad = [](const std::string &msg) { throw Error(ErrorKind::kInvalidArgument, msg); };
  if (l.size() < 2) bad("network needs at least dense(1) + sigmoid");
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].kind == Kind::kDense && l[i].units < 1) bad("dense layer with zero units");
    if (l[i].kind == Kind::kDropout && !(l[i].rate >= 0.0 && l[i].rate < 1.0))
      bad("dropout rate " + format_double(l[i].rate) + " outside [0, 1)");
    if (l[i].kind == Kind::kSigmoid && i + 1 != l.size()) bad("sigmoid must be the last layer");
  }
  if (l.back().kind != Kind::kSigmoid || l[l.size() - 2].kind != Kind::kDense ||
      l[l.size() - 2].units != 1)
    bad("network must end with dense(1) + sigmoid");
  if (config.batch_size < 1) bad("batch size must be positive");
  if (!(config.learning_rate >= 0.0)) bad("learning rate must be non-negative");
  if (!(config.bn_momentum >= 0.0 && config.bn_momentum < 1.0))
    bad("batchnorm momentum outside [0, 1)");
}

Network::Network(std::vector<LayerSpec> layers, std::size_t input_dim, std::uint64_t seed,
                 double bn_momentum)
    : specs_(std::move(layers)),
      input_dim_(input_dim),
      bn_momentum_(bn_momentum),
      dropout_rng_(mix_seed(seed ^ 0x5eedd20fULL)) {
  if (input_dim_ < 1) throw Error(ErrorKind::kInvalidArgument, "input width must be positive");
  Rng init(seed);
  Eigen::Index width = static_cast<Eigen::Index>(input_dim_);
  for (const auto &spec : specs_) {
    Layer layer;
    layer.spec = spec;
    switch (spec.kind) {
      case Kind::kDense: {
        if (spec.units < 1) throw Error(ErrorKind::kInvalidArgument, "dense layer with zero units");
        const Eigen::Index out = static_cast<Eigen::Index>(spec.units);
        const double std_dev = std::sqrt(2.0 / static_cast<double>(width));
        layer.w.resize(width, out);
        for (Eigen::Index r = 0; r < width; ++r)
          for (Eigen::Index c = 0; c < out; ++c) layer.w(r, c) = std_dev * init.normal();
        layer.b = Eigen::MatrixXd::Zero(1, out);
        width = out;
        break;
      }
      case Kind::kBatchNorm:
        layer.w = Eigen::MatrixXd::Ones(1, width);
        layer.b = Eigen::MatrixXd::Zero(1, width);
        layer.running_mean = Eigen::RowVectorXd::Zero(width);
        layer.running_var = Eigen::RowVectorXd::Ones(width);
        break;
      case Kind::kDropout:
        if (!(spec.rate >= 0.0 && spec.rate < 1.0))
          throw Error(ErrorKind::kInvalidArgument, "dropout rate outside [0, 1)");
        break;
      default:
        break;
    }
    layer.dw = Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols());
    layer.db = Eigen::MatrixXd::Zero(layer.b.rows(), layer.b.cols());
    layers_.push_back(std::move(layer));
  }
}

std::size_t Network::output_dim() const {
  std::size_t width = input_dim_;
  for (const auto &s : specs_)
    if (s.kind == Kind::kDense) width = s.units;
  return width;
}

Eigen::MatrixXd Network::forward(const Eigen::MatrixXd &x, Phase phase) {
  if (static_cast<std::size_t>(x.cols()) != input_dim_)
    throw Error(ErrorKind::kDimensionMismatch,
                "network expects width " + std::to_string(input_dim_) + ", got " +
                    std::to_string(x.cols()));
  const bool train = phase == Phase::kTrain;
  Eigen::MatrixXd a = x;
  for (auto &L : layers_) {
    switch (L.spec.kind) {
      case Kind::kDense:
        L.input = a;
        a = a * L.w;
        a.rowwise() += L.b.row(0);
        break;
      case Kind::kRelu:
        // Subgradient at exactly 0 is 0.
        L.mask = (a.array() > 0.0).cast<double>();
        a = a.cwiseProduct(L.mask);
        break;
      case Kind::kBatchNorm: {
        Eigen::RowVectorXd mean, var;
        if (train) {
          mean = a.colwise().mean();
          var = (a.rowwise() - mean).array().square().colwise().mean();
          L.running_mean = bn_momentum_ * L.running_mean + (1.0 - bn_momentum_) * mean;
          L.running_var = bn_momentum_ * L.running_var + (1.0 - bn_momentum_) * var;
        } else {
          mean = L.running_mean;
          var = L.running_var;
        }
        L.inv_std = (var.array() + kBnEpsilon).rsqrt();
        L.xhat = (a.rowwise() - mean).array().rowwise() * L.inv_std.array();
        a = (L.xhat.array().rowwise() * L.w.row(0).array()).rowwise() + L.b.row(0).array();
        break;
      }
      case Kind::kDropout:
        if (train && dropout_enabled_ && L.spec.rate > 0.0) {
          const double keep = 1.0 - L.spec.rate;
          L.mask.resize(a.rows(), a.cols());
          for (Eigen::Index c = 0; c < a.cols(); ++c)
            for (Eigen::Index r = 0; r < a.rows(); ++r)
              L.mask(r, c) = dropout_rng_.uniform() < keep ? 1.0 / keep : 0.0;
          a = a.cwiseProduct(L.mask);
        } else {
          L.mask.resize(0, 0);
        }
        break;
      case Kind::kSigmoid:
        // Keep saturated outputs strictly inside (0, 1).
        a = (1.0 + (-a.array()).exp())
                .inverse()
                .max(std::numeric_limits<double>::min())
                .min(1.0 - std::numeric_limits<double>::epsilon() / 2.0)
                .matrix();
        L.output = a;
        break;
    }
  }
  last_phase_train_ = train;
  return a;
}

Eigen::MatrixXd Network::backward(const Eigen::MatrixXd &grad_out) {
  Eigen::MatrixXd g = grad_out;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    Layer &L = *it;
    switch (L.spec.kind) {
      case Kind::kDense:
        L.dw.noalias() = L.input.transpose() * g;
        L.db = g.colwise().sum();
        g = (g * L.w.transpose()).eval();
        break;
      case Kind::kRelu:
        g = g.cwiseProduct(L.mask);
        break;
      case Kind::kBatchNorm: {
        L.dw = (g.cwiseProduct(L.xhat)).colwise().sum();
        L.db = g.colwise().sum();
        const Eigen::MatrixXd dxhat = g.array().rowwise() * L.w.row(0).array();
        if (last_phase_train_) {
          const double n = static_cast<double>(g.rows());
          const Eigen::RowVectorXd sum_d = dxhat.colwise().sum();
          const Eigen::RowVectorXd sum_dx = dxhat.cwiseProduct(L.xhat).colwise().sum();
          Eigen::MatrixXd t = n * dxhat;
          t.rowwise() -= sum_d;
          t -= (L.xhat.array().rowwise() * sum_dx.array()).matrix();
          g = (t.array().rowwise() * (L.inv_std.array() / n)).matrix();
        } else {
          g = (dxhat.array().rowwise() * L.inv_std.array()).matrix();
        }
        break;
      }
      case Kind::kDropout:
        if (L.mask.size() > 0) g = g.cwiseProduct(L.mask);
        break;
      case Kind::kSigmoid:
        g = g.cwiseProduct((L.output.array() * (1.0 - L.output.array())).matrix());
        break;
    }
  }
  return g;
}

std::vector<Eigen::MatrixXd *> Network::parameters() {
  std::vector<Eigen::MatrixXd *> out;
  for (auto &L : layers_)
    if (L.spec.kind == Kind::kDense || L.spec.kind == Kind::kBatchNorm) {
      out.push_back(&L.w);
      out.push_back(&L.b);
    }
  return out;
}

std::vector<Eigen::MatrixXd *> Network::gradients() {
  std::vector<Eigen::MatrixXd *> out;
  for (auto &L : layers_)
    if (L.spec.kind == Kind::kDense || L.spec.kind == Kind::kBatchNorm) {
      out.push_back(&L.dw);
      out.push_back(&L.db);
    }
  return out;
}

void Network::set_dense(std::size_t layer, const Eigen::MatrixXd &weights,
                        const Eigen::RowVectorXd &bias) {
  if (layer >= layers_.size() || layers_[layer].spec.kind != Kind::kDense)
    throw Error(ErrorKind::kInvalidArgument, "layer " + std::to_string(layer) + " is not dense");
  Layer &L = layers_[layer];
  if (weights.rows() != L.w.rows() || weights.cols() != L.w.cols() || bias.size() != L.b.cols())
    throw Error(ErrorKind::kDimensionMismatch, "dense parameter shape mismatch");
  L.w = weights;
  L.b = bias;
}

const Eigen::MatrixXd &Network::dense_weights(std::size_t layer) const {
  if (layer >= layers_.size() || layers_[layer].spec.kind != Kind::kDense)
    throw Error(ErrorKind::kInvalidArgument, "layer " + std::to_string(layer) + " is not dense");
  return layers_[layer].w;
}

std::string Network::to_json() const {
  nlohmann::ordered_json j;
  j["input_dim"] = input_dim_;
  j["bn_momentum"] = bn_momentum_;
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (const auto &L : layers_) {
    nlohmann::ordered_json lj;
    lj["layer"] = to_string(L.spec);
    if (L.spec.kind == Kind::kDense) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (Eigen::Index r = 0; r < L.w.rows(); ++r) rows.push_back(to_vec(L.w.row(r)));
      lj["w"] = std::move(rows);
      lj["b"] = to_vec(L.b);
    } else if (L.spec.kind == Kind::kBatchNorm) {
      lj["gamma"] = to_vec(L.w);
      lj["beta"] = to_vec(L.b);
      lj["running_mean"] = to_vec(L.running_mean);
      lj["running_var"] = to_vec(L.running_var);
    }
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j.dump() + "\n";
}

Network Network::from_json(const std::string &text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<LayerSpec> specs;
    for (const auto &lj : j.at("layers")) specs.push_back(parse_layer_spec(lj.at("layer")));
    Network net(specs, j.at("input_dim").get<std::size_t>(), 0,
                j.at("bn_momentum").get<double>());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const auto &lj = j.at("layers")[i];
      Layer &L = net.layers_[i];
      auto load_row = [&](const char *key, Eigen::MatrixXd *dst) {
        const auto v = lj.at(key).get<std::vector<double>>();
        if (static_cast<Eigen::Index>(v.size()) != dst->size())
          throw Error(ErrorKind::kParse, std::string("checkpoint '") + key + "' has wrong size");
        *dst = row_matrix(v);
      };
      if (L.spec.kind == Kind::kDense) {
        const auto &rows = lj.at("w");
        if (static_cast<Eigen::Index>(rows.size()) != L.w.rows())
          throw Error(ErrorKind::kParse, "checkpoint weight rows mismatch");
        for (Eigen::Index r = 0; r < L.w.rows(); ++r) {
          const auto v = rows[static_cast<std::size_t>(r)].get<std::vector<double>>();
          if (static_cast<Eigen::Index>(v.size()) != L.w.cols())
            throw Error(ErrorKind::kParse, "checkpoint weight cols mismatch");
          for (Eigen::Index c = 0; c < L.w.cols(); ++c) L.w(r, c) = v[static_cast<std::size_t>(c)];
        }
        load_row("b", &L.b);
      } else if (L.spec.kind == Kind::kBatchNorm) {
        load_row("gamma", &L.w);
        load_row("beta", &L.b);
        Eigen::MatrixXd m = L.running_mean, v = L.running_var;
        load_row("running_mean", &m);
        load_row("running_var", &v);
        L.running_mean = m.row(0);
        L.running_var = v.row(0);
      }
    }
    return net;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("bad checkpoint: ") + e.what());
  }
}

Network build(const NetConfig &config, std::size_t input_dim) {
  validate_config(config);
  return Network(config.layers, input_dim, config.seed, config.bn_momentum);
}

namespace {

void check_loss_args(const Eigen::VectorXd &p, const std::vector<int> &y,
                     const std::vector<double> &weights) {
  if (static_cast<std::size_t>(p.size()) != y.size())
    throw Error(ErrorKind::kDimensionMismatch, "probabilities and labels differ in length");
  if (!weights.empty() && weights.size() != y.size())
    throw Error(ErrorKind::kDimensionMismatch, "sample weights and labels differ in length");
  if (y.empty()) throw Error(ErrorKind::kInvalidArgument, "empty batch");
}

}  // namespace

double loss_bce(const Eigen::VectorXd &p, const std::vector<int> &y,
                const std::vector<double> &weights) {
  check_loss_args(p, y, weights);
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double q = std::clamp(p[static_cast<Eigen::Index>(i)], kBceEpsilon, 1.0 - kBceEpsilon);
    const double w = weights.empty() ? 1.0 : weights[i];
    sum += w * (y[i] ? std::log(q) : std::log(1.0 - q));
  }
  return -sum / static_cast<double>(y.size());
}

Eigen::VectorXd loss_bce_grad(const Eigen::VectorXd &p, const std::vector<int> &y,
                              const std::vector<double> &weights) {
  check_loss_args(p, y, weights);
  const double n = static_cast<double>(y.size());
  Eigen::VectorXd g(p.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double q = p[static_cast<Eigen::Index>(i)];
    const double w = weights.empty() ? 1.0 : weights[i];
    if (q < kBceEpsilon || q > 1.0 - kBceEpsilon) {
      g[static_cast<Eigen::Index>(i)] = 0.0;
    } else {
      g[static_cast<Eigen::Index>(i)] = -w * (y[i] ? 1.0 / q : -1.0 / (1.0 - q)) / n;
    }
  }
  return g;
}

double gradient_check(const Network &net, const Eigen::MatrixXd &x, const std::vector<int> &y,
                      double h) {
  Network probe = net;
  probe.set_dropout_enabled(false);
  auto loss_at = [&]() {
    const Eigen::MatrixXd out = probe.forward(x, Phase::kTrain);
    return loss_bce(out.col(0), y);
  };

  const Eigen::MatrixXd out = probe.forward(x, Phase::kTrain);
  probe.backward(loss_bce_grad(out.col(0), y));
  std::vector<Eigen::MatrixXd> analytic;
  for (auto *g : probe.gradients()) analytic.push_back(*g);

  double worst = 0.0;
  auto params = probe.parameters();
  for (std::size_t k = 0; k < params.size(); ++k) {
    Eigen::MatrixXd &theta = *params[k];
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      const double saved = theta.data()[i];
      theta.data()[i] = saved + h;
      const double up = loss_at();
      theta.data()[i] = saved - h;
      const double down = loss_at();
      theta.data()[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[k].data()[i];
      const double scale = std::max({std::abs(a), std::abs(numeric), 1e-7});
      worst = std::max(worst, std::abs(a - numeric) / scale);
    }
  }
  return worst;
}

TrainReport train(Network &net, const Matrix &x_in, const std::vector<int> &y,
                  const NetConfig &config) {
  validate_config(config);
  if (static_cast<std::size_t>(x_in.rows()) != y.size())
    throw Error(ErrorKind::kDimensionMismatch, "features and labels differ in length");
  std::size_t positives = 0;
  for (int v : y) {
    if (v != 0 && v != 1) throw Error(ErrorKind::kInvalidArgument, "labels must be binary");
    positives += v;
  }
  if (positives == 0 || positives == y.size())
    throw Error(ErrorKind::kInvalidArgument, "training data must contain both classes");

  const std::size_t n = y.size();
  const Eigen::MatrixXd x = x_in;
  std::vector<double> weights;
  if (config.class_weight) {
    const double w1 = static_cast<double>(n) / (2.0 * static_cast<double>(positives));
    const double w0 = static_cast<double>(n) / (2.0 * static_cast<double>(n - positives));
    for (int v : y) weights.push_back(v ? w1 : w0);
  }

  auto params = net.parameters();
  auto grads = net.gradients();
  std::vector<Eigen::MatrixXd> m, v;
  for (auto *p : params) {
    m.push_back(Eigen::MatrixXd::Zero(p->rows(), p->cols()));
    v.push_back(Eigen::MatrixXd::Zero(p->rows(), p->cols()));
  }
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kAdamEps = 1e-8;
  double beta1_t = 1.0, beta2_t = 1.0;

  Rng shuffle(mix_seed(config.seed + 0x9e37ULL));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  TrainReport report;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[shuffle.uniform_index(i)]);

    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      std::vector<Eigen::Index> idx(order.begin() + static_cast<std::ptrdiff_t>(start),
                                    order.begin() + static_cast<std::ptrdiff_t>(end));
      const Eigen::MatrixXd xb = x(idx, Eigen::all);
      std::vector<int> yb;
      std::vector<double> wb;
      for (auto i : idx) {
        yb.push_back(y[static_cast<std::size_t>(i)]);
        if (!weights.empty()) wb.push_back(weights[static_cast<std::size_t>(i)]);
      }
      const Eigen::MatrixXd out = net.forward(xb, Phase::kTrain);
      net.backward(loss_bce_grad(out.col(0), yb, wb));

      beta1_t *= kBeta1;
      beta2_t *= kBeta2;
      for (std::size_t k = 0; k < params.size(); ++k) {
        const Eigen::MatrixXd &g = *grads[k];
        m[k] = kBeta1 * m[k] + (1.0 - kBeta1) * g;
        v[k] = kBeta2 * v[k] + (1.0 - kBeta2) * g.cwiseProduct(g);
        const Eigen::ArrayXXd mhat = m[k].array() / (1.0 - beta1_t);
        const Eigen::ArrayXXd vhat = v[k].array() / (1.0 - beta2_t);
        params[k]->array() -= config.learning_rate * mhat / (vhat.sqrt() + kAdamEps);
      }
    }

    const Eigen::VectorXd p = net.forward(x, Phase::kInfer).col(0);
    report.loss.push_back(loss_bce(p, y, weights));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i)
      correct += (p[static_cast<Eigen::Index>(i)] >= 0.5 ? 1 : 0) == y[i];
    report.train_acc.push_back(static_cast<double>(correct) / static_cast<double>(n));
  }
  return report;
}

std::string train_report_csv(const TrainReport &report) {
  std::ostringstream os;
  os << "epoch,loss,train_acc\n";
  for (std::size_t e = 0; e < report.loss.size(); ++e)
    os << (e + 1) << ',' << format_double(report.loss[e]) << ','
       << format_double(report.train_acc[e]) << '\n';
  return os.str();
}

Prediction threshold_predictions(std::vector<double> probabilities,
                                 const std::vector<int> &truth, double threshold) {
  if (!truth.empty() && truth.size() != probabilities.size())
    throw Error(ErrorKind::kDimensionMismatch, "probabilities and labels differ in length");
  Prediction out;
  out.probabilities = std::move(probabilities);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < out.probabilities.size(); ++i) {
    const int label = out.probabilities[i] >= threshold ? 1 : 0;
    out.labels.push_back(label);
    if (!truth.empty()) correct += label == truth[i];
  }
  out.accuracy = truth.empty() || out.labels.empty()
                     ? std::numeric_limits<double>::quiet_NaN()
                     : static_cast<double>(correct) / static_cast<double>(truth.size());
  return out;
}

Prediction predict(Network &net, const Matrix &x, const std::vector<int> &truth,
                   double threshold) {
  if (!truth.empty() && truth.size() != static_cast<std::size_t>(x.rows()))
    throw Error(ErrorKind::kDimensionMismatch, "features and labels differ in length");
  std::vector<double> probs;
  if (x.rows() > 0) {
    const Eigen::MatrixXd out = net.forward(Eigen::MatrixXd(x), Phase::kInfer);
    probs.assign(out.col(0).data(), out.col(0).data() + out.rows());
  }
  return threshold_predictions(std::move(probs), truth, threshold);
}

}  // namespace promdet
