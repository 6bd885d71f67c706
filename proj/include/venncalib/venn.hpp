#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace venncalib {

using FeatureVector = std::vector<double>;

// A labeled feature vector. Components must be finite, label in {0, 1}.
class Observation {
 public:
  Observation(FeatureVector x, int label);

  const FeatureVector& x() const { return x_; }
  int label() const { return label_; }

  friend bool operator==(const Observation& a, const Observation& b) {
    return a.label_ == b.label_ && a.x_ == b.x_;
  }

 private:
  FeatureVector x_;
  int label_;
};

// Order-forgotten multiset of observations. Stored as a sequence, but
// equality ignores storage order.
class Bag {
 public:
  explicit Bag(std::vector<Observation> elements) : elems_(std::move(elements)) {}

  std::span<const Observation> elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

  friend bool operator==(const Bag& a, const Bag& b);

 private:
  std::vector<Observation> elems_;
};

// The pair of candidate probabilities that the label is 1, one per
// postulated label. No ordering between the two is implied.
struct MultiProbPrediction {
  double p0 = 0.0;
  double p1 = 0.0;
};

struct ProbabilityInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Convex hull of the pair.
ProbabilityInterval probability_interval(const MultiProbPrediction& p);

// Class id per index; ids are arbitrary but consistent within one call.
using Partition = std::vector<std::size_t>;

// Equivariant grouping rule: given a sequence of n >= 2 observations,
// partitions the indices 0..n-1 into equivalence classes. Permuting the
// sequence must permute the partition accordingly (check_equivariance).
// Measurability is vacuous for the finite, computable rules built here.
class Taxonomy {
 public:
  using Rule = std::function<Partition(std::span<const Observation>)>;

  Taxonomy(std::string name, Rule rule);

  Partition partition(std::span<const Observation> seq) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Rule rule_;
};

// One class containing every index.
Taxonomy trivial_taxonomy();

// Classes keyed on the label alone.
Taxonomy label_taxonomy();

// For each postulated label y, appends (x, y) to the training sequence,
// partitions the extended sequence, and returns the fraction of label-1
// observations (postulated label included) in the test point's class.
MultiProbPrediction venn_predict(const Taxonomy& tax, std::span<const Observation> training,
                                 const FeatureVector& x);

// True iff the partition of the permuted sequence is the permuted partition:
// positions k, m are grouped together after permuting exactly when positions
// perm[k], perm[m] were grouped before.
bool check_equivariance(const Taxonomy& tax, std::span<const Observation> seq,
                        std::span<const std::size_t> perm);

}  // namespace venncalib
