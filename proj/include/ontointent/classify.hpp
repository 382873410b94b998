#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ontointent {

/// Linear multi-label head: s = W h + b, node i fires when sigmoid(s_i) > tau.
struct ClassifierHead {
  std::vector<std::string> node_order;
  std::size_t dimension = 0;
  std::vector<double> weights;  // row-major, node_order.size() x dimension
  std::vector<double> bias;
  double tau = 0.5;

  // Training record.
  std::size_t epochs = 0;
  double learning_rate = 0.0;
  std::uint64_t seed = 0;
  double final_loss = 0.0;

  std::size_t rows() const { return node_order.size(); }

  void write(std::ostream& out) const;
  static ClassifierHead read(std::istream& in);
};

double sigmoid(double x);

/// Raw scores W h + b. Throws DimensionMismatch.
std::vector<double> head_scores(const ClassifierHead& head,
                                std::span<const double> h);

/// Nodes with sigmoid(score) > tau, in node order.
std::vector<std::string> classify(const ClassifierHead& head,
                                  std::span<const double> h);
/// Same rule with an explicit threshold in place of `head.tau`.
std::vector<std::string> classify(const ClassifierHead& head,
                                  std::span<const double> h, double tau);

/// Single-label mode: the softmax argmax node.
std::string classify_single(const ClassifierHead& head,
                            std::span<const double> h);

struct TrainingExample {
  std::vector<double> features;
  std::vector<std::string> labels;
};

struct TrainingOptions {
  double learning_rate = 10.0;
  std::size_t epochs = 500;
  std::uint64_t seed = 0;
  double tau = 0.5;
};

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> grad_weights;
  std::vector<double> grad_bias;
};

/// Mean binary cross-entropy over every (example, node) pair and its
/// analytic gradient. Examples are visited in the given order.
LossAndGradient loss_and_gradient(const ClassifierHead& head,
                                  std::span<const TrainingExample> data);

/// Full-batch gradient descent from zero weights. The seed fixes the
/// accumulation order. Throws DivergenceError on a non-finite loss.
ClassifierHead train_head(std::span<const TrainingExample> data,
                          std::vector<std::string> node_order,
                          std::size_t dimension, const TrainingOptions& opts);

}  // namespace ontointent
