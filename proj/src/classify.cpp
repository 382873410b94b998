#include "ontointent/classify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "ontointent/errors.hpp"

namespace ontointent {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::vector<double> head_scores(const ClassifierHead& head,
                                std::span<const double> h) {
  if (h.size() != head.dimension) {
    throw DimensionMismatch("pooled state has dimension " +
                            std::to_string(h.size()) + ", head expects " +
                            std::to_string(head.dimension));
  }
  std::vector<double> s(head.rows());
  for (std::size_t i = 0; i < head.rows(); ++i) {
    const double* w = head.weights.data() + i * head.dimension;
    double acc = head.bias[i];
    for (std::size_t j = 0; j < head.dimension; ++j) acc += w[j] * h[j];
    s[i] = acc;
  }
  return s;
}

std::vector<std::string> classify(const ClassifierHead& head,
                                  std::span<const double> h, double tau) {
  auto s = head_scores(head, h);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (sigmoid(s[i]) > tau) out.push_back(head.node_order[i]);
  }
  return out;
}

std::vector<std::string> classify(const ClassifierHead& head,
                                  std::span<const double> h) {
  return classify(head, h, head.tau);
}

std::string classify_single(const ClassifierHead& head,
                            std::span<const double> h) {
  auto s = head_scores(head, h);
  if (s.empty()) throw ValidationError("classifier head has no rows");
  // softmax is monotone, so its argmax is the score argmax.
  auto best = std::max_element(s.begin(), s.end()) - s.begin();
  return head.node_order[static_cast<std::size_t>(best)];
}

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

std::vector<std::vector<double>> targets(const ClassifierHead& head,
                                         std::span<const TrainingExample> data) {
  std::unordered_map<std::string, std::size_t> row;
  for (std::size_t i = 0; i < head.rows(); ++i) row.emplace(head.node_order[i], i);
  std::vector<std::vector<double>> y(data.size(), std::vector<double>(head.rows()));
  for (std::size_t n = 0; n < data.size(); ++n) {
    for (const auto& label : data[n].labels) {
      auto it = row.find(label);
      if (it == row.end()) {
        throw ValidationError("training label '" + label + "' is not a head node");
      }
      y[n][it->second] = 1.0;
    }
  }
  return y;
}

LossAndGradient loss_and_gradient_impl(const ClassifierHead& head,
                                       std::span<const TrainingExample> data,
                                       const std::vector<std::vector<double>>& y,
                                       std::span<const std::size_t> order) {
  LossAndGradient out;
  out.grad_weights.assign(head.weights.size(), 0.0);
  out.grad_bias.assign(head.rows(), 0.0);
  const double scale =
      1.0 / (static_cast<double>(data.size()) * static_cast<double>(head.rows()));
  for (std::size_t n : order) {
    const auto& h = data[n].features;
    auto s = head_scores(head, h);
    for (std::size_t i = 0; i < s.size(); ++i) {
      // BCE(sigmoid(s), y) = softplus(s) - y s
      out.loss += softplus(s[i]) - y[n][i] * s[i];
      const double r = sigmoid(s[i]) - y[n][i];
      double* g = out.grad_weights.data() + i * head.dimension;
      for (std::size_t j = 0; j < head.dimension; ++j) g[j] += r * h[j];
      out.grad_bias[i] += r;
    }
  }
  out.loss *= scale;
  for (auto& g : out.grad_weights) g *= scale;
  for (auto& g : out.grad_bias) g *= scale;
  return out;
}

}  // namespace

LossAndGradient loss_and_gradient(const ClassifierHead& head,
                                  std::span<const TrainingExample> data) {
  if (data.empty()) throw EmptyDataset("no training examples");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return loss_and_gradient_impl(head, data, targets(head, data), order);
}

ClassifierHead train_head(std::span<const TrainingExample> data,
                          std::vector<std::string> node_order,
                          std::size_t dimension, const TrainingOptions& opts) {
  if (data.empty()) throw EmptyDataset("no training examples");
  if (node_order.empty()) throw ValidationError("classifier head needs nodes");
  for (const auto& ex : data) {
    if (ex.features.size() != dimension) {
      throw DimensionMismatch("training features of dimension " +
                              std::to_string(ex.features.size()) +
                              ", expected " + std::to_string(dimension));
    }
  }
  if (!(opts.tau > 0.0 && opts.tau < 1.0)) {
    throw ConfigError("classifier tau must lie in (0, 1)");
  }

  ClassifierHead head;
  head.node_order = std::move(node_order);
  head.dimension = dimension;
  head.weights.assign(head.rows() * dimension, 0.0);
  head.bias.assign(head.rows(), 0.0);
  head.tau = opts.tau;
  head.learning_rate = opts.learning_rate;
  head.seed = opts.seed;

  const auto y = targets(head, data);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(opts.seed);
  std::shuffle(order.begin(), order.end(), rng);

  double loss = 0.0;
  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    auto lg = loss_and_gradient_impl(head, data, y, order);
    if (!std::isfinite(lg.loss)) {
      throw DivergenceError("loss became non-finite at epoch " +
                            std::to_string(epoch));
    }
    loss = lg.loss;
    for (std::size_t k = 0; k < head.weights.size(); ++k) {
      head.weights[k] -= opts.learning_rate * lg.grad_weights[k];
    }
    for (std::size_t i = 0; i < head.rows(); ++i) {
      head.bias[i] -= opts.learning_rate * lg.grad_bias[i];
    }
    head.epochs = epoch + 1;
  }
  auto final_lg = loss_and_gradient_impl(head, data, y, order);
  if (!std::isfinite(final_lg.loss)) throw DivergenceError("final loss non-finite");
  head.final_loss = opts.epochs > 0 ? final_lg.loss : loss;
  for (double w : head.weights) {
    if (!std::isfinite(w)) throw DivergenceError("non-finite weight");
  }
  return head;
}

void ClassifierHead::write(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["node_order"] = node_order;
  doc["dimension"] = dimension;
  doc["weights"] = weights;
  doc["bias"] = bias;
  doc["tau"] = tau;
  doc["training"] = {{"epochs", epochs},
                     {"learning_rate", learning_rate},
                     {"seed", seed},
                     {"final_loss", final_loss}};
  out << doc.dump(1) << "\n";
}

ClassifierHead ClassifierHead::read(std::istream& in) {
  ClassifierHead h;
  try {
    auto doc = nlohmann::json::parse(in);
    h.node_order = doc.at("node_order").get<std::vector<std::string>>();
    h.dimension = doc.at("dimension").get<std::size_t>();
    h.weights = doc.at("weights").get<std::vector<double>>();
    h.bias = doc.at("bias").get<std::vector<double>>();
    h.tau = doc.at("tau").get<double>();
    if (auto t = doc.find("training"); t != doc.end()) {
      h.epochs = t->value("epochs", std::size_t{0});
      h.learning_rate = t->value("learning_rate", 0.0);
      h.seed = t->value("seed", std::uint64_t{0});
      h.final_loss = t->value("final_loss", 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("classifier head: ") + e.what());
  }
  if (h.weights.size() != h.rows() * h.dimension || h.bias.size() != h.rows()) {
    throw ValidationError("classifier head shape does not match node_order/dimension");
  }
  if (!(h.tau > 0.0 && h.tau < 1.0)) throw ValidationError("tau must lie in (0, 1)");
  for (double w : h.weights) {
    if (!std::isfinite(w)) throw ValidationError("non-finite classifier weight");
  }
  return h;
}

}  // namespace ontointent
