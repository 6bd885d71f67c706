#pragma once

#include <optional>
#include <string_view>

#include "venncalib/errors.hpp"
#include "venncalib/venn.hpp"

namespace venncalib {

// Minimax single probability under log loss: the regrets against the two
// candidates, -ln(1-p) + ln(1-p0) for outcome 0 and -ln p + ln p1 for
// outcome 1, cross exactly at p1 / (1 - p0 + p1). Equivalently, normalize
// the unnormalized distribution {0: 1-p0, 1: p1}. Undefined at (1, 0),
// which calibrated Venn-style pairs never produce.
inline double merge_log(const MultiProbPrediction& p) {
  if (p.p0 == 1.0 && p.p1 == 0.0) {
    throw DegenerateInput("merge_log: (p0, p1) = (1, 0) has no minimax solution");
  }
  return p.p1 / (1.0 - p.p0 + p.p1);
}

// Minimax single probability under square loss: regrets p^2 - p0^2 and
// (1-p)^2 - (1-p1)^2 are equal at p1 + p0^2/2 - p1^2/2, which also reads as
// the average of the pair pulled toward 1/2 by their gap.
inline double merge_square(const MultiProbPrediction& p) {
  return p.p1 + p.p0 * p.p0 / 2.0 - p.p1 * p.p1 / 2.0;
}

inline double merge_mean(const MultiProbPrediction& p) { return (p.p0 + p.p1) / 2.0; }

enum class MergeRule { Log, Square, Mean };

inline double merge_prediction(MergeRule rule, const MultiProbPrediction& p) {
  switch (rule) {
    case MergeRule::Log:
      return merge_log(p);
    case MergeRule::Square:
      return merge_square(p);
    case MergeRule::Mean:
      return merge_mean(p);
  }
  throw Error("merge_prediction: unknown rule");
}

inline const char* merge_rule_name(MergeRule rule) {
  switch (rule) {
    case MergeRule::Log:
      return "log";
    case MergeRule::Square:
      return "square";
    case MergeRule::Mean:
      return "mean";
  }
  return "?";
}

inline std::optional<MergeRule> parse_merge_rule(std::string_view name) {
  if (name == "log") return MergeRule::Log;
  if (name == "square") return MergeRule::Square;
  if (name == "mean") return MergeRule::Mean;
  return std::nullopt;
}

}  // namespace venncalib
