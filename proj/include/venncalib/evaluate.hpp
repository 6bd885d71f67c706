#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "venncalib/merge.hpp"
#include "venncalib/scoring.hpp"
#include "venncalib/venn.hpp"

namespace venncalib {

// -ln(1-p) for label 0, -ln p for label 1; +inf at a wrong {0,1} prediction.
double log_loss(double p, int y);

// (y - p)^2.
double square_loss(double p, int y);

// Mean log error; +inf as soon as one term is infinite.
double mle(std::span<const double> preds, std::span<const int> labels);

// Root mean square error.
double rmse(std::span<const double> preds, std::span<const int> labels);

enum class Method { Raw, Dir, Va, Sva };

const char* method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct ExperimentConfig {
  std::string dataset_id;
  std::string classifier_id;
  std::vector<Method> methods{Method::Raw, Method::Dir, Method::Sva};
  MergeRule merge = MergeRule::Log;
  int repeats = 100;
  int va_repeats = 16;  // the retraining method gets its own, shorter stream
  double train_fraction = 2.0 / 3.0;
  std::uint64_t master_seed = 1;
  int jobs = 1;
};

struct MethodResult {
  Method method = Method::Raw;
  int repeats = 0;
  double mean_mle = 0.0;
  double mean_rmse = 0.0;
  int inf_count = 0;  // repeats whose MLE was infinite
  std::vector<double> mle_per_repeat;
  std::vector<double> rmse_per_repeat;
  std::vector<std::uint64_t> seeds;
};

struct ExperimentReport {
  std::string dataset_id;
  std::string classifier_id;
  MergeRule merge = MergeRule::Log;
  std::uint64_t master_seed = 0;
  double train_fraction = 0.0;
  std::size_t dataset_size = 0;
  std::string prng;
  std::vector<MethodResult> results;

  const MethodResult* find(Method m) const;
};

// The split-and-score protocol: per repeat, permute the data with a seed
// derived from the master seed, train on the first floor(train_fraction*n)
// observations, predict the rest, and aggregate MLE/RMSE over repeats.
// Raw/DIR/SVA share one seed stream (identical splits per repeat); the
// retraining method runs its own stream. Raw uses the classifier's score
// clamped to [0, 1] as the probability. The report is a pure function of
// (config, data); repeats run in up to config.jobs threads with bit-identical
// output for any jobs value.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ScoringClassifier& classifier,
                                std::span<const Observation> data);

// rows: method, metric, mean, repeats, inf_count
std::string report_to_csv(const ExperimentReport& report);

// schema "venn-calib-report/1"; infinite means encode as the string "inf"
std::string report_to_json(const ExperimentReport& report);

// Deterministic shortest-ish decimal for doubles ("%.17g", "inf" for
// infinities); used everywhere a report is written.
std::string format_double(double v);

}  // namespace venncalib
