#include "venncalib/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "venncalib/errors.hpp"

namespace venncalib {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct ScoreGroup {
  double score;
  std::int64_t ones;
  std::int64_t total;
};

void validate(std::span<const ScoredLabel> data) {
  if (data.empty()) throw EmptyInput("isotonic fit requires at least one scored label");
  for (const auto& d : data) {
    if (!std::isfinite(d.score())) throw InvalidScore("isotonic fit: non-finite score");
  }
}

// Pool duplicates of each distinct score; input must be sorted by score.
std::vector<ScoreGroup> group_sorted(std::span<const ScoredLabel> sorted) {
  std::vector<ScoreGroup> groups;
  for (const auto& d : sorted) {
    if (!groups.empty() && groups.back().score == d.score()) {
      groups.back().ones += d.label();
      groups.back().total += 1;
    } else {
      groups.push_back({d.score(), static_cast<std::int64_t>(d.label()), 1});
    }
  }
  return groups;
}

IsotonicCalibrator make_calibrator(const std::vector<ScoreGroup>& groups,
                                   std::vector<IsotonicBlock> blocks) {
  std::vector<double> domain;
  domain.reserve(groups.size());
  for (const auto& g : groups) domain.push_back(g.score);
  return IsotonicCalibrator(std::move(domain), std::move(blocks));
}

// Exact likelihood of a pooled monotone assignment: each cell with counts
// (a, N) contributes (a/N)^a ((N-a)/N)^(N-a).
BigRational exact_likelihood(const std::vector<IsotonicBlock>& cells) {
  BigInt num = 1;
  BigInt den = 1;
  for (const auto& c : cells) {
    const BigInt a = c.ones;
    const BigInt z = c.total - c.ones;
    num *= boost::multiprecision::pow(a, static_cast<unsigned>(c.ones));
    num *= boost::multiprecision::pow(z, static_cast<unsigned>(c.total - c.ones));
    den *= boost::multiprecision::pow(BigInt(c.total), static_cast<unsigned>(c.total));
  }
  return BigRational(num, den);
}

std::vector<IsotonicBlock> canonicalize(std::vector<IsotonicBlock> cells) {
  std::vector<IsotonicBlock> merged;
  for (const auto& c : cells) {
    if (!merged.empty() && merged.back().ratio() == c.ratio()) {
      merged.back().last = c.last;
      merged.back().ones += c.ones;
      merged.back().total += c.total;
    } else {
      merged.push_back(c);
    }
  }
  return merged;
}

}  // namespace

ScoredLabel::ScoredLabel(double score, int label) : score_(score), label_(label) {
  if (!std::isfinite(score)) {
    throw InvalidScore("scored label: score must be a finite real");
  }
  if (label != 0 && label != 1) throw Error("scored label: label must be 0 or 1");
}

IsotonicCalibrator::IsotonicCalibrator(std::vector<double> domain,
                                       std::vector<IsotonicBlock> blocks)
    : domain_(std::move(domain)), blocks_(std::move(blocks)) {
  block_of_.resize(domain_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t j = blocks_[b].first; j <= blocks_[b].last; ++j) block_of_[j] = b;
  }
}

std::size_t IsotonicCalibrator::domain_index_of(double score) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), score);
  if (it == domain_.end() || *it != score) {
    throw ScoreNotInDomain("score " + std::to_string(score) + " was not among the fitted scores");
  }
  return static_cast<std::size_t>(it - domain_.begin());
}

double IsotonicCalibrator::evaluate(double score) const {
  return value_at(domain_index_of(score));
}

double IsotonicCalibrator::evaluate_nearest(double score) const {
  if (std::isnan(score)) throw InvalidScore("evaluate_nearest: NaN score");
  auto it = std::lower_bound(domain_.begin(), domain_.end(), score);
  std::size_t idx;
  if (it == domain_.end()) {
    idx = domain_.size() - 1;
  } else if (it == domain_.begin()) {
    idx = 0;
  } else {
    const std::size_t hi = static_cast<std::size_t>(it - domain_.begin());
    const std::size_t lo = hi - 1;
    // tie goes to the smaller score
    idx = (domain_[hi] - score < score - domain_[lo]) ? hi : lo;
  }
  return value_at(idx);
}

IsotonicCalibrator fit_pava(std::span<const ScoredLabel> data) {
  validate(data);
  std::vector<ScoredLabel> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) { return a.score() < b.score(); });
  return fit_pava_sorted(sorted);
}

IsotonicCalibrator fit_pava_sorted(std::span<const ScoredLabel> sorted_data) {
  validate(sorted_data);
  const auto groups = group_sorted(sorted_data);

  // Left-to-right sweep; a new cell absorbs its left neighbour while that
  // neighbour's value is >= its own. Merging on equality folds redundant
  // equal-valued cells, so final blocks are strictly increasing. The fit is
  // the same for any merge order (tested against an exhaustive reference and
  // a randomized-order merge).
  std::vector<IsotonicBlock> stack;
  stack.reserve(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    IsotonicBlock cur{j, j, groups[j].ones, groups[j].total};
    while (!stack.empty() && stack.back().ratio() >= cur.ratio()) {
      cur.first = stack.back().first;
      cur.ones += stack.back().ones;
      cur.total += stack.back().total;
      stack.pop_back();
    }
    stack.push_back(cur);
  }
  return make_calibrator(groups, std::move(stack));
}

IsotonicCalibrator fit_exhaustive(std::span<const ScoredLabel> data) {
  validate(data);
  std::vector<ScoredLabel> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) { return a.score() < b.score(); });
  const auto groups = group_sorted(sorted);
  const std::size_t k = groups.size();
  if (k > kMaxExhaustiveScores) {
    throw TooLarge("exhaustive isotonic fit limited to " +
                   std::to_string(kMaxExhaustiveScores) + " distinct scores, got " +
                   std::to_string(k));
  }

  bool have_best = false;
  BigRational best_likelihood;
  std::vector<IsotonicBlock> best_cells;

  // Bit b of the mask cuts between distinct scores b and b+1.
  for (std::uint64_t mask = 0; mask < (1ull << (k - 1)); ++mask) {
    std::vector<IsotonicBlock> cells;
    IsotonicBlock cur{0, 0, groups[0].ones, groups[0].total};
    for (std::size_t j = 1; j < k; ++j) {
      if (mask & (1ull << (j - 1))) {
        cells.push_back(cur);
        cur = IsotonicBlock{j, j, groups[j].ones, groups[j].total};
      } else {
        cur.last = j;
        cur.ones += groups[j].ones;
        cur.total += groups[j].total;
      }
    }
    cells.push_back(cur);

    bool monotone = true;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c - 1].ratio() > cells[c].ratio()) {
        monotone = false;
        break;
      }
    }
    if (!monotone) continue;

    BigRational lik = exact_likelihood(cells);
    if (!have_best || lik > best_likelihood) {
      have_best = true;
      best_likelihood = std::move(lik);
      best_cells = std::move(cells);
    }
  }

  return make_calibrator(groups, canonicalize(std::move(best_cells)));
}

double log_likelihood(const IsotonicCalibrator& cal, std::span<const ScoredLabel> data) {
  if (data.empty()) throw EmptyInput("log_likelihood: empty data");
  double sum = 0.0;
  for (const auto& d : data) {
    const Ratio r = cal.ratio_at(cal.domain_index_of(d.score()));
    const std::int64_t hits = d.label() == 1 ? r.num : r.den - r.num;
    if (hits == 0) return -std::numeric_limits<double>::infinity();
    sum += std::log(static_cast<double>(hits) / static_cast<double>(r.den));
  }
  return sum;
}

}  // namespace venncalib
