#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "venncalib/ratio.hpp"

namespace venncalib {

// One (classifier score, binary label) pair used to fit a calibrator.
class ScoredLabel {
 public:
  ScoredLabel(double score, int label);

  double score() const { return score_; }
  int label() const { return label_; }

 private:
  double score_;
  int label_;
};

// Contiguous run of domain points sharing one fitted value, kept as the
// exact count pair (ones/total) rather than a rounded probability.
struct IsotonicBlock {
  std::size_t first = 0;  // inclusive domain index range [first, last]
  std::size_t last = 0;
  std::int64_t ones = 0;
  std::int64_t total = 0;

  Ratio ratio() const { return {ones, total}; }
  double value() const { return ratio().value(); }

  friend bool operator==(const IsotonicBlock& a, const IsotonicBlock& b) {
    return a.first == b.first && a.last == b.last && a.ones == b.ones && a.total == b.total;
  }
};

// Nondecreasing step function on the distinct fitted scores. Adjacent blocks
// carry strictly increasing values; equal-valued neighbours are merged, so
// the points mapping to one fitted value are exactly one block. A fitted
// calibrator is immutable and safe to share across threads.
class IsotonicCalibrator {
 public:
  IsotonicCalibrator(std::vector<double> domain, std::vector<IsotonicBlock> blocks);

  const std::vector<double>& domain() const { return domain_; }
  const std::vector<IsotonicBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return domain_.size(); }

  std::size_t block_of(std::size_t domain_index) const { return block_of_[domain_index]; }
  Ratio ratio_at(std::size_t domain_index) const { return blocks_[block_of_[domain_index]].ratio(); }
  double value_at(std::size_t domain_index) const { return blocks_[block_of_[domain_index]].value(); }

  // Index of an exactly matching domain point; throws ScoreNotInDomain.
  std::size_t domain_index_of(double score) const;

  // Fitted value at a score that is in the domain; throws ScoreNotInDomain.
  // Venn-style callers always include the test score in the fit, so a miss
  // signals misuse rather than an out-of-sample query.
  double evaluate(double score) const;

  // Fitted value at the domain point closest to `score`; exact distance ties
  // resolve to the smaller domain point. Throws InvalidScore on NaN.
  double evaluate_nearest(double score) const;

  friend bool operator==(const IsotonicCalibrator& a, const IsotonicCalibrator& b) {
    return a.domain_ == b.domain_ && a.blocks_ == b.blocks_;
  }

 private:
  std::vector<double> domain_;        // strictly increasing distinct scores
  std::vector<IsotonicBlock> blocks_;
  std::vector<std::size_t> block_of_;  // per domain point
};

// Maximum-likelihood nondecreasing fit of binary labels over scores,
// computed by pair-adjacent-violator merging with exact integer pooling.
// Throws EmptyInput / InvalidScore.
IsotonicCalibrator fit_pava(std::span<const ScoredLabel> data);

// Same fit for data already sorted by score (skips the sort). The simplified
// Venn predictor reuses its cached pre-sort through this entry point.
IsotonicCalibrator fit_pava_sorted(std::span<const ScoredLabel> sorted_data);

// Exhaustive reference fit: enumerates every contiguous partition of the
// distinct-score axis, keeps the monotone pooled assignments, and returns
// the likelihood maximizer decided in exact rational arithmetic. Independent
// of the merging path above; the two must agree exactly. Throws TooLarge for
// more than kMaxExhaustiveScores distinct scores.
inline constexpr std::size_t kMaxExhaustiveScores = 12;
IsotonicCalibrator fit_exhaustive(std::span<const ScoredLabel> data);

// Sum of log fitted probabilities of the observed labels; -inf when a point
// has fitted probability 0 for its label (cannot happen when the calibrator
// was fitted on `data` itself). All scores must be in the fitted domain.
double log_likelihood(const IsotonicCalibrator& cal, std::span<const ScoredLabel> data);

}  // namespace venncalib
