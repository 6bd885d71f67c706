#include "venncalib/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "venncalib/calibrate.hpp"
#include "venncalib/data_io.hpp"
#include "venncalib/errors.hpp"
#include "venncalib/parallel.hpp"
#include "venncalib/rng.hpp"

namespace venncalib {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// seed sub-streams inside one experiment
constexpr std::uint64_t kSharedSplitStream = 0;  // raw / dir / sva
constexpr std::uint64_t kVaSplitStream = 1;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

struct RepeatOutcome {
  double mle = 0.0;
  double rmse = 0.0;
};

RepeatOutcome evaluate_method(Method method, const ScoringClassifier& classifier,
                              MergeRule merge, std::span<const Observation> train,
                              std::span<const Observation> test) {
  std::vector<double> preds(test.size());
  std::vector<int> labels(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) labels[i] = test[i].label();

  switch (method) {
    case Method::Raw: {
      const ScoringFunction s = classifier.train(train);
      for (std::size_t i = 0; i < test.size(); ++i) preds[i] = clamp01(s(test[i].x()));
      break;
    }
    case Method::Dir: {
      const FittedDIR model = dir_fit(classifier, train);
      for (std::size_t i = 0; i < test.size(); ++i) preds[i] = dir_predict(model, test[i].x());
      break;
    }
    case Method::Sva: {
      const FittedSVA model = sva_fit(classifier, train);
      for (std::size_t i = 0; i < test.size(); ++i) {
        preds[i] = merge_prediction(merge, model.predict(test[i].x()));
      }
      break;
    }
    case Method::Va: {
      for (std::size_t i = 0; i < test.size(); ++i) {
        preds[i] = merge_prediction(merge, va_predict(classifier, train, test[i].x()));
      }
      break;
    }
  }
  return {mle(preds, labels), rmse(preds, labels)};
}

MethodResult aggregate(Method method, std::vector<double> mles, std::vector<double> rmses,
                       std::vector<std::uint64_t> seeds) {
  MethodResult r;
  r.method = method;
  r.repeats = static_cast<int>(mles.size());
  double mle_sum = 0.0;
  double rmse_sum = 0.0;
  for (double v : mles) {
    mle_sum += v;
    if (std::isinf(v)) ++r.inf_count;
  }
  for (double v : rmses) rmse_sum += v;
  r.mean_mle = mle_sum / static_cast<double>(mles.size());
  r.mean_rmse = rmse_sum / static_cast<double>(rmses.size());
  r.mle_per_repeat = std::move(mles);
  r.rmse_per_repeat = std::move(rmses);
  r.seeds = std::move(seeds);
  return r;
}

}  // namespace

double log_loss(double p, int y) {
  return y == 1 ? -std::log(p) : -std::log1p(-p);
}

double square_loss(double p, int y) {
  const double d = static_cast<double>(y) - p;
  return d * d;
}

double mle(std::span<const double> preds, std::span<const int> labels) {
  if (preds.size() != labels.size()) throw LengthMismatch("mle: length mismatch");
  if (preds.empty()) throw EmptyInput("mle: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) sum += log_loss(preds[i], labels[i]);
  return sum / static_cast<double>(preds.size());
}

double rmse(std::span<const double> preds, std::span<const int> labels) {
  if (preds.size() != labels.size()) throw LengthMismatch("rmse: length mismatch");
  if (preds.empty()) throw EmptyInput("rmse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) sum += square_loss(preds[i], labels[i]);
  return std::sqrt(sum / static_cast<double>(preds.size()));
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Raw:
      return "RAW";
    case Method::Dir:
      return "DIR";
    case Method::Va:
      return "VA";
    case Method::Sva:
      return "SVA";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "RAW" || name == "raw") return Method::Raw;
  if (name == "DIR" || name == "dir") return Method::Dir;
  if (name == "VA" || name == "va") return Method::Va;
  if (name == "SVA" || name == "sva") return Method::Sva;
  return std::nullopt;
}

const MethodResult* ExperimentReport::find(Method m) const {
  for (const auto& r : results) {
    if (r.method == m) return &r;
  }
  return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ScoringClassifier& classifier,
                                std::span<const Observation> data) {
  if (data.size() < 3) throw DatasetTooSmall("run_experiment: need at least 3 observations");
  {
    std::int64_t ones = 0;
    for (const auto& obs : data) ones += obs.label();
    if (ones == 0 || ones == static_cast<std::int64_t>(data.size())) {
      throw SingleClassDataset("run_experiment: dataset contains a single label");
    }
  }
  if (config.repeats < 1 || config.va_repeats < 1) {
    throw Error("run_experiment: repeats must be positive");
  }

  ExperimentReport report;
  report.dataset_id = config.dataset_id;
  report.classifier_id = config.classifier_id.empty() ? classifier.name() : config.classifier_id;
  report.merge = config.merge;
  report.master_seed = config.master_seed;
  report.train_fraction = config.train_fraction;
  report.dataset_size = data.size();
  report.prng = rng::kAlgorithm;

  // canonical method order, filtered to the requested set
  const Method order[] = {Method::Raw, Method::Dir, Method::Va, Method::Sva};
  std::vector<Method> methods;
  for (Method m : order) {
    if (std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end()) {
      methods.push_back(m);
    }
  }
  if (methods.empty()) throw Error("run_experiment: no methods requested");

  std::vector<Method> shared;
  for (Method m : methods) {
    if (m != Method::Va) shared.push_back(m);
  }

  // per-repeat results land in slots indexed by repeat, then reduce in a
  // fixed order, so the report is identical for any jobs value
  std::vector<std::vector<double>> shared_mle(shared.size());
  std::vector<std::vector<double>> shared_rmse(shared.size());
  std::vector<std::uint64_t> shared_seeds;
  if (!shared.empty()) {
    const std::size_t n = static_cast<std::size_t>(config.repeats);
    for (auto& v : shared_mle) v.resize(n);
    for (auto& v : shared_rmse) v.resize(n);
    shared_seeds.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      shared_seeds[r] = rng::derive(config.master_seed, kSharedSplitStream, r);
    }
    for_each_index(n, config.jobs, [&](std::size_t r) {
      const auto [train, test] = permute_split(data, shared_seeds[r], config.train_fraction);
      for (std::size_t m = 0; m < shared.size(); ++m) {
        const auto out = evaluate_method(shared[m], classifier, config.merge, train, test);
        shared_mle[m][r] = out.mle;
        shared_rmse[m][r] = out.rmse;
      }
    });
  }

  std::vector<double> va_mle;
  std::vector<double> va_rmse;
  std::vector<std::uint64_t> va_seeds;
  const bool want_va = std::find(methods.begin(), methods.end(), Method::Va) != methods.end();
  if (want_va) {
    const std::size_t n = static_cast<std::size_t>(config.va_repeats);
    va_mle.resize(n);
    va_rmse.resize(n);
    va_seeds.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      va_seeds[r] = rng::derive(config.master_seed, kVaSplitStream, r);
    }
    for_each_index(n, config.jobs, [&](std::size_t r) {
      const auto [train, test] = permute_split(data, va_seeds[r], config.train_fraction);
      const auto out = evaluate_method(Method::Va, classifier, config.merge, train, test);
      va_mle[r] = out.mle;
      va_rmse[r] = out.rmse;
    });
  }

  for (Method m : methods) {
    if (m == Method::Va) {
      report.results.push_back(aggregate(m, std::move(va_mle), std::move(va_rmse), va_seeds));
    } else {
      const std::size_t i = static_cast<std::size_t>(
          std::find(shared.begin(), shared.end(), m) - shared.begin());
      report.results.push_back(
          aggregate(m, std::move(shared_mle[i]), std::move(shared_rmse[i]), shared_seeds));
    }
  }
  return report;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "method,metric,mean,repeats,inf_count\n";
  for (const auto& r : report.results) {
    out << method_name(r.method) << ",mle," << format_double(r.mean_mle) << "," << r.repeats
        << "," << r.inf_count << "\n";
    out << method_name(r.method) << ",rmse," << format_double(r.mean_rmse) << "," << r.repeats
        << "," << r.inf_count << "\n";
  }
  return out.str();
}

std::string report_to_json(const ExperimentReport& report) {
  using json = nlohmann::ordered_json;
  auto num = [](double v) -> json {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
  };

  json doc;
  doc["schema"] = "venn-calib-report/1";
  doc["dataset"] = report.dataset_id;
  doc["classifier"] = report.classifier_id;
  doc["merge"] = merge_rule_name(report.merge);
  doc["master_seed"] = report.master_seed;
  doc["train_fraction"] = report.train_fraction;
  doc["dataset_size"] = report.dataset_size;
  doc["prng"] = report.prng;
  doc["methods"] = json::array();
  for (const auto& r : report.results) {
    json m;
    m["method"] = method_name(r.method);
    m["repeats"] = r.repeats;
    m["mean_mle"] = num(r.mean_mle);
    m["mean_rmse"] = num(r.mean_rmse);
    m["inf_count"] = r.inf_count;
    m["mle_per_repeat"] = json::array();
    for (double v : r.mle_per_repeat) m["mle_per_repeat"].push_back(num(v));
    m["rmse_per_repeat"] = json::array();
    for (double v : r.rmse_per_repeat) m["rmse_per_repeat"].push_back(num(v));
    m["seeds"] = r.seeds;
    doc["methods"].push_back(std::move(m));
  }
  return doc.dump(2) + "\n";
}

}  // namespace venncalib
