#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "venncalib/venn.hpp"

namespace venncalib {

// Trained score map x -> s(x). Deterministic and finite on finite inputs;
// immutable and shareable across threads.
class ScoringFunction {
 public:
  ScoringFunction() = default;
  ScoringFunction(std::string name, std::function<double(const FeatureVector&)> score)
      : name_(std::move(name)), score_(std::move(score)) {}

  double operator()(const FeatureVector& x) const { return score_(x); }
  const std::string& name() const { return name_; }
  explicit operator bool() const { return static_cast<bool>(score_); }

 private:
  std::string name_;
  std::function<double(const FeatureVector&)> score_;
};

// Algorithm identity plus hyperparameters; training is deterministic given
// the configuration, so repeated fits on the same data agree bit for bit.
class ScoringClassifier {
 public:
  ScoringClassifier(std::string name,
                    std::function<ScoringFunction(std::span<const Observation>)> train)
      : name_(std::move(name)), train_(std::move(train)) {}

  ScoringFunction train(std::span<const Observation> training) const { return train_(training); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<ScoringFunction(std::span<const Observation>)> train_;
};

struct LogisticConfig {
  double learning_rate = 0.1;
  int iterations = 1000;
  double l2_penalty = 1e-4;
  std::uint64_t seed = 0;  // part of the determinism contract; full-batch descent does not draw
};

struct KnnConfig {
  int k = 10;
};

// Full-batch gradient descent on L2-regularized log loss over features
// standardized with training statistics; weights start at zero, so zero
// iterations score 1/2 everywhere. s(x) = sigmoid(w.x + b).
ScoringFunction train_logistic(std::span<const Observation> training,
                               const LogisticConfig& config = {});

// Per-class Gaussian per feature with a pooled-variance floor; score is the
// posterior probability of label 1 under empirical class priors. Throws
// SingleClassTraining when only one label is present.
ScoringFunction train_gaussian_nb(std::span<const Observation> training);

// Fraction of label-1 among the k nearest training objects (Euclidean);
// distance ties break toward the smaller training index. Throws InvalidK
// unless 1 <= k <= training size.
ScoringFunction train_knn(std::span<const Observation> training, const KnnConfig& config = {});

ScoringClassifier logistic_classifier(const LogisticConfig& config = {});

// Falls back to the class-prior constant score on single-class training, so
// predictors that extend the training sequence with a postulated label stay
// total.
ScoringClassifier gaussian_nb_classifier();

// k is capped at the training size.
ScoringClassifier knn_classifier(const KnnConfig& config = {});

// s(x) = x[0]; retraining is a no-op. Useful for exact end-to-end checks.
ScoringClassifier identity_classifier();

ScoringClassifier constant_classifier(double value);

}  // namespace venncalib
