#include "venncalib/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "venncalib/errors.hpp"
#include "venncalib/rng.hpp"

namespace venncalib {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// One RFC 4180 record; may span several physical lines when quoted fields
// contain newlines. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int ch;
  while ((ch = in.get()) != EOF) {
    any = true;
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_no;
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c == '\r') {
      // swallow; CRLF handled by the '\n' branch
    } else if (c == '\n') {
      ++line_no;
      fields.push_back(field);
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(line_no, "unterminated quoted field");
  if (!any) return false;
  ++line_no;
  fields.push_back(field);
  return true;
}

struct ColumnPlan {
  std::vector<std::size_t> feature_columns;  // indices into the raw table
  std::vector<bool> is_categorical;          // parallel to feature_columns
};

ColumnPlan plan_columns(const RawTable& table, const DatasetSpec& spec) {
  ColumnPlan plan;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c == table.label_index) continue;
    plan.feature_columns.push_back(c);
    const bool forced = std::find(spec.categorical.begin(), spec.categorical.end(),
                                  table.columns[c]) != spec.categorical.end();
    bool categorical = forced;
    if (!forced) {
      // numeric iff every non-missing cell parses
      for (const auto& row : table.rows) {
        const std::string& cell = row[c];
        if (cell == spec.missing_token) continue;
        double v;
        if (!parse_double(cell, v)) {
          categorical = true;
          break;
        }
      }
    }
    plan.is_categorical.push_back(categorical);
  }
  return plan;
}

int map_label(const std::string& cell, const DatasetSpec& spec,
              const std::vector<std::string>& distinct) {
  if (!spec.positive_label.empty()) return cell == spec.positive_label ? 1 : 0;
  if (distinct.size() == 2 &&
      ((distinct[0] == "0" && distinct[1] == "1") || (distinct[0] == "1" && distinct[1] == "0"))) {
    return cell == "1" ? 1 : 0;
  }
  throw NonBinaryLabel(
      "labels are not {0, 1}; set positive_label in the dataset spec to pick the positive class");
}

std::vector<std::string> distinct_labels(const RawTable& table) {
  std::vector<std::string> distinct;
  for (const auto& row : table.rows) {
    const std::string& cell = row[table.label_index];
    if (std::find(distinct.begin(), distinct.end(), cell) == distinct.end()) {
      distinct.push_back(cell);
    }
  }
  if (distinct.size() != 2) {
    throw NonBinaryLabel("label column must take exactly two distinct values, found " +
                         std::to_string(distinct.size()));
  }
  return distinct;
}

EncodedDataset encode_with_plan(const RawTable& table, const DatasetSpec& spec,
                                const ColumnPlan& plan,
                                const std::vector<ColumnEncoding>* reference) {
  const auto distinct = distinct_labels(table);
  if (!spec.positive_label.empty() &&
      std::find(distinct.begin(), distinct.end(), spec.positive_label) == distinct.end()) {
    throw NonBinaryLabel("positive_label '" + spec.positive_label +
                         "' does not occur in the label column");
  }

  std::vector<ColumnEncoding> encodings;
  if (reference) {
    encodings = *reference;
  } else {
    for (std::size_t f = 0; f < plan.feature_columns.size(); ++f) {
      ColumnEncoding enc;
      enc.source_column = table.columns[plan.feature_columns[f]];
      enc.categorical = plan.is_categorical[f];
      if (enc.categorical) {
        for (const auto& row : table.rows) {
          const std::string& cell = row[plan.feature_columns[f]];
          if (cell == spec.missing_token) continue;
          if (std::find(enc.categories.begin(), enc.categories.end(), cell) ==
              enc.categories.end()) {
            enc.categories.push_back(cell);
          }
        }
      }
      encodings.push_back(std::move(enc));
    }
  }

  std::vector<std::string> feature_names;
  for (const auto& enc : encodings) {
    if (enc.categorical) {
      for (const auto& cat : enc.categories) feature_names.push_back(enc.source_column + "=" + cat);
    } else {
      feature_names.push_back(enc.source_column);
    }
  }

  std::vector<FeatureVector> rows;
  std::vector<int> labels;
  rows.reserve(table.rows.size());
  labels.reserve(table.rows.size());
  for (const auto& raw_row : table.rows) {
    FeatureVector row;
    row.reserve(feature_names.size());
    for (std::size_t f = 0; f < encodings.size(); ++f) {
      const std::string& cell = raw_row[plan.feature_columns[f]];
      const bool missing = cell == spec.missing_token;
      const ColumnEncoding& enc = encodings[f];
      if (enc.categorical) {
        std::size_t hit = enc.categories.size();
        if (!missing) {
          const auto it = std::find(enc.categories.begin(), enc.categories.end(), cell);
          hit = static_cast<std::size_t>(it - enc.categories.begin());
        }
        for (std::size_t c = 0; c < enc.categories.size(); ++c) {
          row.push_back(c == hit ? 1.0 : 0.0);
        }
      } else if (missing) {
        row.push_back(kMissing);
      } else {
        double v;
        if (!parse_double(cell, v)) {
          throw UnparseableNumeric("column '" + enc.source_column + "': cannot parse '" + cell +
                                   "' as a number");
        }
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
    labels.push_back(map_label(raw_row[table.label_index], spec, distinct));
  }

  return EncodedDataset(std::move(rows), std::move(labels), std::move(feature_names),
                        std::move(encodings), {});
}

}  // namespace

DatasetSpec load_dataset_spec(const std::string& spec_path) {
  std::ifstream in(spec_path);
  if (!in) throw IoError("cannot open dataset spec: " + spec_path);

  DatasetSpec spec;
  spec.id = std::filesystem::path(spec_path).stem().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "path") {
      spec.path = value;
    } else if (key == "label_column") {
      spec.label_column = value;
    } else if (key == "positive_label") {
      spec.positive_label = value;
    } else if (key == "missing_token") {
      spec.missing_token = value;
    } else if (key == "categorical") {
      spec.categorical = split_csv_list(value);
    } else if (key == "id") {
      spec.id = value;
    } else {
      throw ConfigError("dataset spec: unknown key '" + key + "'");
    }
  }
  if (spec.path.empty()) throw ConfigError("dataset spec: missing 'path'");
  if (spec.label_column.empty()) throw ConfigError("dataset spec: missing 'label_column'");
  // relative data paths resolve against the spec file's directory
  const std::filesystem::path p(spec.path);
  if (p.is_relative()) {
    spec.path = (std::filesystem::path(spec_path).parent_path() / p).string();
  }
  return spec;
}

RawTable load_csv(const DatasetSpec& spec) {
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset: " + spec.path);

  RawTable table;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  if (!read_record(in, fields, line_no)) throw ParseError(1, "empty file, expected a header row");
  for (auto& f : fields) table.columns.push_back(trim(f));

  while (read_record(in, fields, line_no)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // trailing blank line
    if (fields.size() != table.columns.size()) {
      throw ParseError(line_no, "expected " + std::to_string(table.columns.size()) +
                                    " fields, found " + std::to_string(fields.size()));
    }
    std::vector<std::string> row;
    row.reserve(fields.size());
    for (auto& f : fields) row.push_back(trim(f));
    table.rows.push_back(std::move(row));
  }

  const auto it = std::find(table.columns.begin(), table.columns.end(), spec.label_column);
  if (it != table.columns.end()) {
    table.label_index = static_cast<std::size_t>(it - table.columns.begin());
  } else {
    // allow a 0-based index
    double idx;
    if (parse_double(spec.label_column, idx) && idx >= 0 &&
        idx < static_cast<double>(table.columns.size()) && idx == std::floor(idx)) {
      table.label_index = static_cast<std::size_t>(idx);
    } else {
      throw MissingLabelColumn("label column '" + spec.label_column + "' not found in " +
                               spec.path);
    }
  }
  return table;
}

EncodedDataset::EncodedDataset(std::vector<FeatureVector> rows, std::vector<int> labels,
                               std::vector<std::string> feature_names,
                               std::vector<ColumnEncoding> encodings,
                               std::vector<std::string> warnings)
    : rows_(std::move(rows)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      encodings_(std::move(encodings)),
      warnings_(std::move(warnings)) {}

bool EncodedDataset::has_missing() const {
  for (const auto& row : rows_) {
    for (double v : row) {
      if (std::isnan(v)) return true;
    }
  }
  return false;
}

std::vector<Observation> EncodedDataset::observations() const {
  std::vector<Observation> out;
  out.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out.emplace_back(rows_[i], labels_[i]);
  return out;
}

EncodedDataset encode(const RawTable& table, const DatasetSpec& spec) {
  return encode_with_plan(table, spec, plan_columns(table, spec), nullptr);
}

EncodedDataset apply_encoding(const EncodedDataset& reference, const RawTable& table,
                              const DatasetSpec& spec) {
  // rebuild the column plan from the reference encodings
  ColumnPlan plan;
  for (const auto& enc : reference.encodings()) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), enc.source_column);
    if (it == table.columns.end()) {
      throw ConfigError("apply_encoding: column '" + enc.source_column + "' missing from table");
    }
    plan.feature_columns.push_back(static_cast<std::size_t>(it - table.columns.begin()));
    plan.is_categorical.push_back(enc.categorical);
  }
  return encode_with_plan(table, spec, plan, &reference.encodings());
}

ImputationStats imputation_stats(const EncodedDataset& dataset,
                                 std::span<const std::size_t> rows) {
  if (rows.empty()) throw EmptyInput("imputation_stats: empty statistics source");
  ImputationStats stats;
  stats.feature_means.assign(dataset.dimension(), 0.0);
  for (std::size_t j = 0; j < dataset.dimension(); ++j) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r : rows) {
      const double v = dataset.rows()[r][j];
      if (!std::isnan(v)) {
        sum += v;
        ++n;
      }
    }
    if (n == 0) {
      stats.feature_means[j] = 0.0;
      stats.warnings.push_back("feature '" + dataset.feature_names()[j] +
                               "' is missing in every statistics row; imputing 0");
    } else {
      stats.feature_means[j] = sum / static_cast<double>(n);
    }
  }
  return stats;
}

EncodedDataset impute(const EncodedDataset& dataset, const ImputationStats& stats) {
  std::vector<FeatureVector> rows = dataset.rows();
  for (auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (std::isnan(row[j])) row[j] = stats.feature_means[j];
    }
  }
  std::vector<std::string> warnings = dataset.warnings();
  warnings.insert(warnings.end(), stats.warnings.begin(), stats.warnings.end());
  return EncodedDataset(std::move(rows), dataset.labels(), dataset.feature_names(),
                        dataset.encodings(), std::move(warnings));
}

EncodedDataset impute(const EncodedDataset& dataset, std::span<const std::size_t> training_rows) {
  return impute(dataset, imputation_stats(dataset, training_rows));
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  rng::Stream stream(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::pair<std::vector<Observation>, std::vector<Observation>> permute_split(
    std::span<const Observation> data, std::uint64_t seed, double train_fraction) {
  if (data.size() < 3) throw DatasetTooSmall("permute_split: need at least 3 observations");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("permute_split: train_fraction must lie in (0, 1)");
  }
  const auto perm = permutation(data.size(), seed);
  std::size_t train_size =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(data.size())));
  train_size = std::clamp<std::size_t>(train_size, 1, data.size() - 1);

  std::vector<Observation> train;
  std::vector<Observation> test;
  train.reserve(train_size);
  test.reserve(data.size() - train_size);
  for (std::size_t i = 0; i < data.size(); ++i) {
    (i < train_size ? train : test).push_back(data[perm[i]]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace venncalib
