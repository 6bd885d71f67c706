#include "venncalib/venn.hpp"

#include <algorithm>
#include <cmath>

#include "venncalib/errors.hpp"

namespace venncalib {

Observation::Observation(FeatureVector x, int label) : x_(std::move(x)), label_(label) {
  for (double v : x_) {
    if (!std::isfinite(v)) throw NonFiniteFeature("observation: non-finite feature component");
  }
  if (label != 0 && label != 1) throw Error("observation: label must be 0 or 1");
}

bool operator==(const Bag& a, const Bag& b) {
  if (a.elems_.size() != b.elems_.size()) return false;
  auto key = [](const Observation& o) { return std::make_pair(o.x(), o.label()); };
  auto sorted_keys = [&](const Bag& bag) {
    std::vector<std::pair<FeatureVector, int>> keys;
    keys.reserve(bag.elems_.size());
    for (const auto& o : bag.elems_) keys.push_back(key(o));
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  return sorted_keys(a) == sorted_keys(b);
}

ProbabilityInterval probability_interval(const MultiProbPrediction& p) {
  return {std::min(p.p0, p.p1), std::max(p.p0, p.p1)};
}

Taxonomy::Taxonomy(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

Partition Taxonomy::partition(std::span<const Observation> seq) const {
  if (seq.size() < 2) throw Error("taxonomy: sequence must have at least 2 observations");
  Partition p = rule_(seq);
  if (p.size() != seq.size()) throw Error("taxonomy '" + name_ + "' returned a malformed partition");
  return p;
}

Taxonomy trivial_taxonomy() {
  return Taxonomy("trivial", [](std::span<const Observation> seq) {
    return Partition(seq.size(), 0);
  });
}

Taxonomy label_taxonomy() {
  return Taxonomy("label", [](std::span<const Observation> seq) {
    Partition p(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) p[i] = static_cast<std::size_t>(seq[i].label());
    return p;
  });
}

MultiProbPrediction venn_predict(const Taxonomy& tax, std::span<const Observation> training,
                                 const FeatureVector& x) {
  if (training.empty()) throw EmptyInput("venn_predict: empty training sequence");

  std::vector<Observation> extended(training.begin(), training.end());
  const std::size_t test_index = extended.size();

  double p[2];
  for (int y = 0; y <= 1; ++y) {
    extended.push_back(Observation(x, y));
    const Partition part = tax.partition(extended);
    const std::size_t cls = part[test_index];
    std::int64_t ones = 0;
    std::int64_t members = 0;
    for (std::size_t i = 0; i < extended.size(); ++i) {
      if (part[i] == cls) {
        ++members;
        ones += extended[i].label();
      }
    }
    // members >= 1: the class of the test index contains the test index
    p[y] = static_cast<double>(ones) / static_cast<double>(members);
    extended.pop_back();
  }
  return {p[0], p[1]};
}

bool check_equivariance(const Taxonomy& tax, std::span<const Observation> seq,
                        std::span<const std::size_t> perm) {
  if (seq.size() < 2 || perm.size() != seq.size()) {
    throw Error("check_equivariance: need |seq| >= 2 and a permutation of its indices");
  }
  const Partition before = tax.partition(seq);

  std::vector<Observation> permuted;
  permuted.reserve(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) permuted.push_back(seq[perm[k]]);
  const Partition after = tax.partition(permuted);

  for (std::size_t k = 0; k < seq.size(); ++k) {
    for (std::size_t m = k + 1; m < seq.size(); ++m) {
      const bool grouped_after = after[k] == after[m];
      const bool grouped_before = before[perm[k]] == before[perm[m]];
      if (grouped_after != grouped_before) return false;
    }
  }
  return true;
}

}  // namespace venncalib
