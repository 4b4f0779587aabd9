#include "seriescls/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace seriescls {

namespace {

void check(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("SeriesModel: " + message);
}

}  // namespace

SeriesModel SeriesModel::assemble(Hyperparameters params,
                                  std::vector<std::string> class_labels,
                                  ModelMetadata metadata, StatsTable stats,
                                  ChildrenIndex children) {
  params.validate();
  check(class_labels.size() >= 2, "need at least two class labels");

  const int n_features = static_cast<int>(metadata.value_tokens.size());
  const auto n_classes = class_labels.size();

  auto root_it = stats.find(ConditionSet{});
  check(root_it != stats.end(), "base-rate combination missing");
  check(root_it->second.n_train > 0, "empty training counts");

  for (const auto& [cs, st] : stats) {
    check(static_cast<int>(cs.size()) <= params.max_depth,
          "combination deeper than max_depth");
    check(st.class_counts.size() == n_classes, "class count arity mismatch");
    std::int64_t sum = 0;
    for (const auto c : st.class_counts) {
      check(c >= 0, "negative count");
      sum += c;
    }
    check(sum == st.n_train, "n_train does not match class counts");
    check(st.n_train > 0 || cs.empty(), "zero-count combination stored");
    for (const auto& cond : cs.conditions()) {
      check(cond.feature >= 0 && cond.feature < n_features, "feature index out of range");
      check(cond.value >= 0 &&
                cond.value < static_cast<std::int32_t>(
                                 metadata.value_tokens[cond.feature].size()),
            "value code out of range");
    }
    // every present parent must be backed by at least as much data
    if (!cs.empty()) {
      for (std::size_t skip = 0; skip < cs.size(); ++skip) {
        std::vector<FeatureCondition> sub;
        sub.reserve(cs.size() - 1);
        for (std::size_t i = 0; i < cs.size(); ++i) {
          if (i != skip) sub.push_back(cs.conditions()[i]);
        }
        auto parent = stats.find(ConditionSet{std::move(sub)});
        if (parent != stats.end()) {
          check(st.n_train <= parent->second.n_train, "child outweighs parent");
        }
      }
    }
  }

  for (const auto& [cs, kids] : children) {
    check(stats.contains(cs), "children recorded for unknown combination");
    for (const auto& kid : kids) {
      check(stats.contains(kid), "child combination not retained");
      check(kid.size() == cs.size() + 1, "child is not a one-step extension");
    }
    check(std::is_sorted(kids.begin(), kids.end()), "children not in canonical order");
  }

  SeriesModel m;
  m.params_ = params;
  m.class_labels_ = std::move(class_labels);
  m.metadata_ = std::move(metadata);
  m.stats_ = std::move(stats);
  m.children_ = std::move(children);
  m.root_ = &m.stats_.find(ConditionSet{})->second;
  return m;
}

std::vector<std::size_t> SeriesModel::combinations_per_depth() const {
  std::vector<std::size_t> per_depth(static_cast<std::size_t>(params_.max_depth) + 1, 0);
  for (const auto& [cs, st] : stats_) {
    per_depth[cs.size()] += 1;
  }
  return per_depth;
}

SeriesModel SeriesModel::with_inference_params(double noise_count,
                                               double saturation_count,
                                               bool use_usefulness) const {
  SeriesModel m = *this;
  m.params_.noise_count = noise_count;
  m.params_.saturation_count = saturation_count;
  m.params_.use_usefulness = use_usefulness;
  m.params_.validate();
  m.root_ = &m.stats_.find(ConditionSet{})->second;
  return m;
}

int SeriesModel::class_index(std::string_view label) const {
  for (std::size_t i = 0; i < class_labels_.size(); ++i) {
    if (class_labels_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

QueryInstance SeriesModel::encode_instance(std::span<const std::string> tokens,
                                           bool* had_unknown) const {
  if (static_cast<int>(tokens.size()) != feature_count()) {
    throw std::invalid_argument(
        "encode_instance: expected " + std::to_string(feature_count()) +
        " values, got " + std::to_string(tokens.size()));
  }
  if (had_unknown) *had_unknown = false;
  QueryInstance q;
  q.values.resize(tokens.size(), kMissingValue);
  for (std::size_t f = 0; f < tokens.size(); ++f) {
    const auto& tok = tokens[f];
    if (tok == metadata_.missing_token) continue;
    const auto& known = metadata_.value_tokens[f];
    auto it = std::find(known.begin(), known.end(), tok);
    if (it == known.end()) {
      if (had_unknown) *had_unknown = true;  // unseen category: treat as missing
      continue;
    }
    q.values[f] = static_cast<std::int32_t>(it - known.begin());
  }
  return q;
}

std::vector<std::string> SeriesModel::decode_instance(const QueryInstance& instance) const {
  std::vector<std::string> tokens;
  tokens.reserve(instance.values.size());
  for (std::size_t f = 0; f < instance.values.size(); ++f) {
    const auto v = instance.values[f];
    if (v == kMissingValue) {
      tokens.push_back(metadata_.missing_token);
    } else {
      tokens.push_back(metadata_.value_tokens.at(f).at(v));
    }
  }
  return tokens;
}

std::string SeriesModel::describe_condition(const FeatureCondition& c) const {
  std::string name;
  if (c.feature < static_cast<std::int32_t>(metadata_.feature_names.size()) &&
      !metadata_.feature_names[c.feature].empty()) {
    name = metadata_.feature_names[c.feature];
    name += " = ";
  } else {
    name = "x" + std::to_string(c.feature) + "=";
  }
  if (c.feature < static_cast<std::int32_t>(metadata_.value_tokens.size()) &&
      c.value < static_cast<std::int32_t>(metadata_.value_tokens[c.feature].size())) {
    name += metadata_.value_tokens[c.feature][c.value];
  } else {
    name += std::to_string(c.value);
  }
  return name;
}

std::string SeriesModel::describe_set(const ConditionSet& cs) const {
  if (cs.empty()) return "(base rate)";
  std::string out;
  for (const auto& c : cs.conditions()) {
    if (!out.empty()) out += ", ";
    out += describe_condition(c);
  }
  return out;
}

}  // namespace seriescls
