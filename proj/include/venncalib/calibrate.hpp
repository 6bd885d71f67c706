#pragma once

#include <span>
#include <vector>

#include "venncalib/isotonic.hpp"
#include "venncalib/scoring.hpp"
#include "venncalib/venn.hpp"

namespace venncalib {

// Direct isotonic calibration: score the training sequence once, fit the
// calibrator on those scores, and answer queries through the nearest fitted
// score. Can output exactly 0 or 1.
struct FittedDIR {
  ScoringFunction score;
  IsotonicCalibrator calibrator;
};

FittedDIR dir_fit(const ScoringClassifier& classifier, std::span<const Observation> training);
double dir_predict(const FittedDIR& model, const FeatureVector& x);

// For each postulated label y, retrains the classifier on the training
// sequence extended with (x, y), fits the calibrator on the scored extended
// sequence, and evaluates it at the test score. Trains the classifier
// exactly twice per test object. Output satisfies p0 < 1 and p1 > 0: the
// postulated observation sits in its own fit set, so its level set always
// contains a point of the opposite label.
MultiProbPrediction va_predict(const ScoringClassifier& classifier,
                               std::span<const Observation> training, const FeatureVector& x);

// Simplified variant: scores are computed once at fit time; only the
// isotonic fit is redone per test object and postulated label. The scored
// training sequence is kept pre-sorted so each query costs one ordered
// insertion plus a linear fit.
class FittedSVA {
 public:
  FittedSVA(ScoringFunction score, std::vector<ScoredLabel> sorted_scored);

  const ScoringFunction& score() const { return score_; }
  std::size_t training_size() const { return sorted_scored_.size(); }

  MultiProbPrediction predict(const FeatureVector& x) const;

 private:
  ScoringFunction score_;
  std::vector<ScoredLabel> sorted_scored_;
};

// Trains the classifier exactly once.
FittedSVA sva_fit(const ScoringClassifier& classifier, std::span<const Observation> training);
MultiProbPrediction sva_predict(const FittedSVA& model, const FeatureVector& x);

// The taxonomy that trains the classifier on the whole sequence, fits the
// isotonic calibrator on all scored labels, and groups indices by equal
// fitted value. Venn prediction under this taxonomy coincides exactly with
// va_predict (tested).
Taxonomy va_taxonomy(const ScoringClassifier& classifier);

}  // namespace venncalib
