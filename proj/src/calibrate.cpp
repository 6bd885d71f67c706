#include "venncalib/calibrate.hpp"

#include <algorithm>

#include "venncalib/errors.hpp"

namespace venncalib {

namespace {

std::vector<ScoredLabel> score_sequence(const ScoringFunction& score,
                                        std::span<const Observation> seq) {
  std::vector<ScoredLabel> out;
  out.reserve(seq.size());
  for (const auto& obs : seq) out.emplace_back(score(obs.x()), obs.label());
  return out;
}

}  // namespace

FittedDIR dir_fit(const ScoringClassifier& classifier, std::span<const Observation> training) {
  if (training.empty()) throw EmptyInput("dir_fit: empty training sequence");
  ScoringFunction score = classifier.train(training);
  auto scored = score_sequence(score, training);
  IsotonicCalibrator calibrator = fit_pava(scored);
  return {std::move(score), std::move(calibrator)};
}

double dir_predict(const FittedDIR& model, const FeatureVector& x) {
  return model.calibrator.evaluate_nearest(model.score(x));
}

MultiProbPrediction va_predict(const ScoringClassifier& classifier,
                               std::span<const Observation> training, const FeatureVector& x) {
  if (training.empty()) throw EmptyInput("va_predict: empty training sequence");

  std::vector<Observation> extended(training.begin(), training.end());
  double p[2];
  for (int y = 0; y <= 1; ++y) {
    extended.push_back(Observation(x, y));
    const ScoringFunction score = classifier.train(extended);
    auto scored = score_sequence(score, extended);
    const double test_score = scored.back().score();
    const IsotonicCalibrator cal = fit_pava(scored);
    p[y] = cal.evaluate(test_score);
    extended.pop_back();
  }
  return {p[0], p[1]};
}

FittedSVA::FittedSVA(ScoringFunction score, std::vector<ScoredLabel> sorted_scored)
    : score_(std::move(score)), sorted_scored_(std::move(sorted_scored)) {}

MultiProbPrediction FittedSVA::predict(const FeatureVector& x) const {
  const double test_score = score_(x);

  std::vector<ScoredLabel> with_test;
  with_test.reserve(sorted_scored_.size() + 1);
  const auto insert_at =
      std::lower_bound(sorted_scored_.begin(), sorted_scored_.end(), test_score,
                       [](const ScoredLabel& s, double v) { return s.score() < v; });

  double p[2];
  for (int y = 0; y <= 1; ++y) {
    with_test.assign(sorted_scored_.begin(), insert_at);
    with_test.emplace_back(test_score, y);
    with_test.insert(with_test.end(), insert_at, sorted_scored_.end());
    const IsotonicCalibrator cal = fit_pava_sorted(with_test);
    p[y] = cal.evaluate(test_score);
  }
  return {p[0], p[1]};
}

FittedSVA sva_fit(const ScoringClassifier& classifier, std::span<const Observation> training) {
  if (training.empty()) throw EmptyInput("sva_fit: empty training sequence");
  ScoringFunction score = classifier.train(training);
  auto scored = score_sequence(score, training);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredLabel& a, const ScoredLabel& b) { return a.score() < b.score(); });
  return FittedSVA(std::move(score), std::move(scored));
}

MultiProbPrediction sva_predict(const FittedSVA& model, const FeatureVector& x) {
  return model.predict(x);
}

Taxonomy va_taxonomy(const ScoringClassifier& classifier) {
  return Taxonomy("va:" + classifier.name(), [classifier](std::span<const Observation> seq) {
    const ScoringFunction score = classifier.train(seq);
    std::vector<double> scores;
    scores.reserve(seq.size());
    for (const auto& obs : seq) scores.push_back(score(obs.x()));

    std::vector<ScoredLabel> scored;
    scored.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) scored.emplace_back(scores[i], seq[i].label());
    const IsotonicCalibrator cal = fit_pava(scored);

    // blocks carry strictly increasing values, so block id == level id
    Partition part(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      part[i] = cal.block_of(cal.domain_index_of(scores[i]));
    }
    return part;
  });
}

}  // namespace venncalib
