#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "venncalib/venn.hpp"

namespace venncalib {

// How to read and encode one CSV dataset. Loaded from a flat key = value
// file with keys: path, label_column, positive_label, missing_token,
// categorical (comma-separated column names).
struct DatasetSpec {
  std::string path;
  std::string label_column;     // header name, or a 0-based index
  std::string positive_label;   // empty requires labels already in {0, 1}
  std::string missing_token = "?";
  std::vector<std::string> categorical;  // forced-categorical columns
  std::string id;               // defaults to the spec file stem
};

DatasetSpec load_dataset_spec(const std::string& spec_path);

struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::size_t label_index = 0;
};

// RFC 4180-style CSV with a header row; missing-value tokens are kept as-is
// in the cells and recognized during encoding. Throws IoError, ParseError,
// MissingLabelColumn.
RawTable load_csv(const DatasetSpec& spec);

struct ColumnEncoding {
  std::string source_column;
  bool categorical = false;
  std::vector<std::string> categories;  // first-appearance order; empty for numeric
};

// Numeric matrix + labels. Missing numeric cells are NaN until impute();
// missing categorical cells encode as an all-zero indicator row.
class EncodedDataset {
 public:
  EncodedDataset(std::vector<FeatureVector> rows, std::vector<int> labels,
                 std::vector<std::string> feature_names, std::vector<ColumnEncoding> encodings,
                 std::vector<std::string> warnings);

  std::size_t size() const { return rows_.size(); }
  std::size_t dimension() const { return feature_names_.size(); }
  const std::vector<FeatureVector>& rows() const { return rows_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<ColumnEncoding>& encodings() const { return encodings_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool has_missing() const;

  // Materializes observations; requires no remaining NaN.
  std::vector<Observation> observations() const;

 private:
  std::vector<FeatureVector> rows_;
  std::vector<int> labels_;
  std::vector<std::string> feature_names_;
  std::vector<ColumnEncoding> encodings_;
  std::vector<std::string> warnings_;
};

// Numeric columns parsed; categorical columns one-hot encoded with
// categories in first-appearance order; labels mapped onto {0, 1}. Columns
// not listed in spec.categorical are numeric if every non-missing cell
// parses as a number, else categorical. Throws NonBinaryLabel,
// UnparseableNumeric.
EncodedDataset encode(const RawTable& table, const DatasetSpec& spec);

// Re-encodes another table with the category maps and column kinds of
// `reference` (e.g. a held-out test file); unseen categories become all-zero
// indicator rows.
EncodedDataset apply_encoding(const EncodedDataset& reference, const RawTable& table,
                              const DatasetSpec& spec);

// Per-feature means over the statistics rows, used to fill missing numerics.
struct ImputationStats {
  std::vector<double> feature_means;
  std::vector<std::string> warnings;
};

ImputationStats imputation_stats(const EncodedDataset& dataset,
                                 std::span<const std::size_t> rows);

EncodedDataset impute(const EncodedDataset& dataset, const ImputationStats& stats);

// Convenience: statistics from the given training rows of the same dataset.
EncodedDataset impute(const EncodedDataset& dataset, std::span<const std::size_t> training_rows);

// Fisher-Yates permutation of 0..n-1 driven by the splitmix64-ctr/1 stream
// for `seed`; identical across platforms.
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

// Permutes and splits: training = first floor(train_fraction * n) items of
// the permuted order, test = the rest. Throws DatasetTooSmall for n < 3.
std::pair<std::vector<Observation>, std::vector<Observation>> permute_split(
    std::span<const Observation> data, std::uint64_t seed, double train_fraction);

}  // namespace venncalib
