#include "seriescls/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace seriescls {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delimiter)) fields.push_back(trimmed(field));
  if (!line.empty() && line.back() == delimiter) fields.emplace_back();
  return fields;
}

int resolve_label_column(const CsvOptions& options,
                         const std::vector<std::string>& header, std::size_t arity,
                         const std::string& name) {
  const std::string& spec = options.label_column;
  const bool numeric = !spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
  if (numeric) {
    const int idx = std::stoi(spec);
    if (idx < 0 || static_cast<std::size_t>(idx) >= arity) {
      throw std::runtime_error(name + ": label column " + spec + " out of range");
    }
    return idx;
  }
  if (!options.has_header) {
    throw std::runtime_error(name + ": label column name '" + spec +
                             "' needs a header row");
  }
  auto it = std::find(header.begin(), header.end(), spec);
  if (it == header.end()) {
    throw std::runtime_error(name + ": label column '" + spec + "' not in header");
  }
  return static_cast<int>(it - header.begin());
}

}  // namespace

LoadedDataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open dataset");
  return load_csv(in, options, path);
}

LoadedDataset load_csv(std::istream& in, const CsvOptions& options,
                       const std::string& name) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool want_header = options.has_header;
  std::size_t arity = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trimmed(line).empty()) continue;
    auto fields = split_line(line, options.delimiter);
    if (want_header) {
      header = std::move(fields);
      arity = header.size();
      want_header = false;
      continue;
    }
    if (arity == 0) arity = fields.size();
    if (fields.size() != arity) {
      throw std::runtime_error(name + ": row " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(arity));
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::runtime_error(name + ": empty dataset");
  if (arity < 2) throw std::runtime_error(name + ": need a label column and features");

  const int label_index = resolve_label_column(options, header, arity, name);
  const int feature_count = static_cast<int>(arity) - 1;

  DatasetSchema schema;
  schema.missing_token = options.missing_token;
  schema.label_index = label_index;
  schema.value_tokens.resize(feature_count);
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (static_cast<int>(i) != label_index) schema.feature_names.push_back(header[i]);
    }
  } else {
    for (int f = 0; f < feature_count; ++f) {
      schema.feature_names.push_back("x" + std::to_string(f));
    }
  }

  // labels sorted for a deterministic encoding across runs
  {
    std::vector<std::string> labels;
    for (const auto& row : rows) labels.push_back(row[label_index]);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() < 2) {
      throw std::runtime_error(name + ": fewer than two distinct class labels");
    }
    schema.class_labels = std::move(labels);
  }

  TrainingSet train;
  train.feature_count = feature_count;
  train.class_labels = schema.class_labels;
  train.instances.reserve(rows.size());
  train.labels.reserve(rows.size());
  std::vector<std::map<std::string, std::int32_t>> code_of(feature_count);
  for (const auto& row : rows) {
    const auto lit = std::lower_bound(schema.class_labels.begin(),
                                      schema.class_labels.end(), row[label_index]);
    train.labels.push_back(
        static_cast<std::int32_t>(lit - schema.class_labels.begin()));
    std::vector<std::int32_t> values;
    values.reserve(feature_count);
    int f = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (static_cast<int>(i) == label_index) continue;
      const auto& tok = row[i];
      if (tok == options.missing_token) {
        values.push_back(kMissingValue);
      } else {
        auto [it, inserted] = code_of[f].try_emplace(
            tok, static_cast<std::int32_t>(schema.value_tokens[f].size()));
        if (inserted) schema.value_tokens[f].push_back(tok);
        values.push_back(it->second);
      }
      ++f;
    }
    train.instances.push_back(std::move(values));
  }
  return LoadedDataset{std::move(train), std::move(schema)};
}

std::vector<std::string> decode_instance(const DatasetSchema& schema,
                                         std::span<const std::int32_t> values) {
  std::vector<std::string> tokens;
  tokens.reserve(values.size());
  for (std::size_t f = 0; f < values.size(); ++f) {
    if (values[f] == kMissingValue) {
      tokens.push_back(schema.missing_token);
    } else {
      tokens.push_back(schema.value_tokens.at(f).at(values[f]));
    }
  }
  return tokens;
}

std::vector<FoldSplit> stratified_kfold(const TrainingSet& train, int k,
                                        std::uint64_t seed, bool allow_small_classes) {
  if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
  if (train.instances.empty()) throw std::invalid_argument("stratified_kfold: empty data");

  std::vector<std::vector<std::int32_t>> by_class(train.class_labels.size());
  for (std::size_t i = 0; i < train.labels.size(); ++i) {
    by_class[train.labels[i]].push_back(static_cast<std::int32_t>(i));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::int32_t>> folds(k);
  std::size_t offset = 0;
  for (std::size_t cls = 0; cls < by_class.size(); ++cls) {
    auto& members = by_class[cls];
    if (members.empty()) continue;
    if (static_cast<int>(members.size()) < k && !allow_small_classes) {
      throw std::invalid_argument("stratified_kfold: class '" +
                                  train.class_labels[cls] + "' has " +
                                  std::to_string(members.size()) +
                                  " instances, fewer than " + std::to_string(k) +
                                  " folds");
    }
    // explicit Fisher-Yates so folds are identical across standard libraries
    for (std::size_t i = members.size(); i-- > 1;) {
      const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(members[i], members[j]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      folds[(offset + i) % k].push_back(members[i]);
    }
    offset = (offset + members.size()) % k;
  }

  std::vector<FoldSplit> splits(k);
  for (int f = 0; f < k; ++f) {
    std::sort(folds[f].begin(), folds[f].end());
    splits[f].test_indices = folds[f];
    for (int g = 0; g < k; ++g) {
      if (g == f) continue;
      splits[f].train_indices.insert(splits[f].train_indices.end(), folds[g].begin(),
                                     folds[g].end());
    }
    std::sort(splits[f].train_indices.begin(), splits[f].train_indices.end());
  }
  return splits;
}

TrainingSet subset(const TrainingSet& train, std::span<const std::int32_t> indices) {
  TrainingSet out;
  out.feature_count = train.feature_count;
  out.class_labels = train.class_labels;
  out.instances.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (const auto i : indices) {
    out.instances.push_back(train.instances.at(i));
    out.labels.push_back(train.labels.at(i));
  }
  return out;
}

}  // namespace seriescls
