#include "venncalib/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "venncalib/errors.hpp"

namespace venncalib {

namespace {

std::size_t checked_dimension(std::span<const Observation> training) {
  if (training.empty()) throw EmptyInput("training sequence is empty");
  const std::size_t dim = training.front().x().size();
  for (const auto& obs : training) {
    if (obs.x().size() != dim) {
      throw DimensionMismatch("training features have inconsistent dimension");
    }
  }
  return dim;
}

void check_dimension(const FeatureVector& x, std::size_t dim, const char* who) {
  if (x.size() != dim) throw DimensionMismatch(std::string(who) + ": feature dimension mismatch");
  for (double v : x) {
    if (!std::isfinite(v)) throw NonFiniteFeature(std::string(who) + ": non-finite feature");
  }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // 1 / sd, with sd floored to 1 for constant columns

  FeatureVector apply(const FeatureVector& x) const {
    FeatureVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) * scale[j];
    return out;
  }
};

Standardizer fit_standardizer(std::span<const Observation> training, std::size_t dim) {
  Standardizer s;
  s.mean.assign(dim, 0.0);
  s.scale.assign(dim, 1.0);
  const double n = static_cast<double>(training.size());
  for (const auto& obs : training) {
    for (std::size_t j = 0; j < dim; ++j) s.mean[j] += obs.x()[j];
  }
  for (std::size_t j = 0; j < dim; ++j) s.mean[j] /= n;
  std::vector<double> var(dim, 0.0);
  for (const auto& obs : training) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = obs.x()[j] - s.mean[j];
      var[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    const double sd = std::sqrt(var[j] / n);
    s.scale[j] = sd > 0.0 ? 1.0 / sd : 1.0;
  }
  return s;
}

}  // namespace

ScoringFunction train_logistic(std::span<const Observation> training,
                               const LogisticConfig& config) {
  const std::size_t dim = checked_dimension(training);
  const Standardizer std_ = fit_standardizer(training, dim);

  std::vector<FeatureVector> xs;
  xs.reserve(training.size());
  for (const auto& obs : training) xs.push_back(std_.apply(obs.x()));

  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  const double n = static_cast<double>(training.size());

  for (int it = 0; it < config.iterations; ++it) {
    std::vector<double> grad_w(dim, 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double z = b;
      for (std::size_t j = 0; j < dim; ++j) z += w[j] * xs[i][j];
      const double err = sigmoid(z) - training[i].label();
      for (std::size_t j = 0; j < dim; ++j) grad_w[j] += err * xs[i][j];
      grad_b += err;
    }
    for (std::size_t j = 0; j < dim; ++j) {
      w[j] -= config.learning_rate * (grad_w[j] / n + config.l2_penalty * w[j]);
    }
    b -= config.learning_rate * grad_b / n;
  }

  return ScoringFunction(
      "logistic", [std_, w = std::move(w), b, dim](const FeatureVector& x) {
        check_dimension(x, dim, "logistic score");
        const FeatureVector z = std_.apply(x);
        double acc = b;
        for (std::size_t j = 0; j < dim; ++j) acc += w[j] * z[j];
        return sigmoid(acc);
      });
}

ScoringFunction train_gaussian_nb(std::span<const Observation> training) {
  const std::size_t dim = checked_dimension(training);

  std::int64_t counts[2] = {0, 0};
  for (const auto& obs : training) ++counts[obs.label()];
  if (counts[0] == 0 || counts[1] == 0) {
    throw SingleClassTraining("gaussian nb: training sequence contains a single label");
  }

  const double n = static_cast<double>(training.size());
  std::vector<double> mean[2]{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  std::vector<double> var[2]{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  std::vector<double> pooled_mean(dim, 0.0);
  std::vector<double> pooled_var(dim, 0.0);

  for (const auto& obs : training) {
    for (std::size_t j = 0; j < dim; ++j) {
      mean[obs.label()][j] += obs.x()[j];
      pooled_mean[j] += obs.x()[j];
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < dim; ++j) mean[c][j] /= static_cast<double>(counts[c]);
  }
  for (std::size_t j = 0; j < dim; ++j) pooled_mean[j] /= n;

  for (const auto& obs : training) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double dc = obs.x()[j] - mean[obs.label()][j];
      var[obs.label()][j] += dc * dc;
      const double dp = obs.x()[j] - pooled_mean[j];
      pooled_var[j] += dp * dp;
    }
  }
  for (std::size_t j = 0; j < dim; ++j) pooled_var[j] /= n;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < dim; ++j) {
      var[c][j] /= static_cast<double>(counts[c]);
      // floor keeps densities finite when a class is constant in a feature
      const double floor = 1e-9 + 1e-6 * pooled_var[j];
      var[c][j] = std::max(var[c][j], floor);
    }
  }

  const double log_prior[2] = {std::log(counts[0] / n), std::log(counts[1] / n)};

  return ScoringFunction(
      "gaussian_nb",
      [mean0 = mean[0], mean1 = mean[1], var0 = var[0], var1 = var[1], log_prior0 = log_prior[0],
       log_prior1 = log_prior[1], dim](const FeatureVector& x) {
        check_dimension(x, dim, "gaussian nb score");
        double log_post[2] = {log_prior0, log_prior1};
        for (std::size_t j = 0; j < dim; ++j) {
          const double d0 = x[j] - mean0[j];
          log_post[0] -= 0.5 * (std::log(2.0 * M_PI * var0[j]) + d0 * d0 / var0[j]);
          const double d1 = x[j] - mean1[j];
          log_post[1] -= 0.5 * (std::log(2.0 * M_PI * var1[j]) + d1 * d1 / var1[j]);
        }
        const double m = std::max(log_post[0], log_post[1]);
        const double e0 = std::exp(log_post[0] - m);
        const double e1 = std::exp(log_post[1] - m);
        return e1 / (e0 + e1);
      });
}

ScoringFunction train_knn(std::span<const Observation> training, const KnnConfig& config) {
  const std::size_t dim = checked_dimension(training);
  if (config.k < 1 || static_cast<std::size_t>(config.k) > training.size()) {
    throw InvalidK("knn: k must satisfy 1 <= k <= training size");
  }
  std::vector<Observation> data(training.begin(), training.end());
  const int k = config.k;

  return ScoringFunction("knn", [data = std::move(data), k, dim](const FeatureVector& x) {
    check_dimension(x, dim, "knn score");
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double d = data[i].x()[j] - x[j];
        d2 += d * d;
      }
      dist.emplace_back(d2, i);
    }
    // (distance, index) pairs order ties by training index
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::int64_t ones = 0;
    for (int i = 0; i < k; ++i) ones += data[dist[i].second].label();
    return static_cast<double>(ones) / static_cast<double>(k);
  });
}

ScoringClassifier logistic_classifier(const LogisticConfig& config) {
  return ScoringClassifier("logistic", [config](std::span<const Observation> training) {
    return train_logistic(training, config);
  });
}

ScoringClassifier gaussian_nb_classifier() {
  return ScoringClassifier("nb", [](std::span<const Observation> training) {
    try {
      return train_gaussian_nb(training);
    } catch (const SingleClassTraining&) {
      std::int64_t ones = 0;
      for (const auto& obs : training) ones += obs.label();
      const double prior = static_cast<double>(ones) / static_cast<double>(training.size());
      return ScoringFunction("nb_prior", [prior](const FeatureVector&) { return prior; });
    }
  });
}

ScoringClassifier knn_classifier(const KnnConfig& config) {
  return ScoringClassifier("knn", [config](std::span<const Observation> training) {
    KnnConfig capped = config;
    capped.k = std::min<std::int64_t>(capped.k, static_cast<std::int64_t>(training.size()));
    return train_knn(training, capped);
  });
}

ScoringClassifier identity_classifier() {
  return ScoringClassifier("identity", [](std::span<const Observation> training) {
    checked_dimension(training);
    return ScoringFunction("identity", [](const FeatureVector& x) {
      if (x.empty()) throw DimensionMismatch("identity score: empty feature vector");
      return x[0];
    });
  });
}

ScoringClassifier constant_classifier(double value) {
  return ScoringClassifier("constant", [value](std::span<const Observation> training) {
    if (training.empty()) throw EmptyInput("training sequence is empty");
    return ScoringFunction("constant", [value](const FeatureVector&) { return value; });
  });
}

}  // namespace venncalib
