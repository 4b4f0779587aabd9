#include "seriescls/trainer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "seriescls/kernels.hpp"

namespace seriescls {

namespace {

bool matches(const ConditionSet& cs, const std::vector<std::int32_t>& values) {
  for (const auto& c : cs.conditions()) {
    if (values[c.feature] != c.value) return false;  // kMissingValue never matches
  }
  return true;
}

using CountMap =
    std::unordered_map<ConditionSet, std::vector<std::int64_t>, ConditionSetHash>;

// Counts every one-condition extension of `parent` over the instances that
// match it. Missing values contribute no extension.
CountMap extension_counts(const TrainingSet& train, const ConditionSet& parent) {
  const auto n_classes = train.class_labels.size();
  CountMap acc;
  for (std::size_t i = 0; i < train.instances.size(); ++i) {
    const auto& values = train.instances[i];
    if (!matches(parent, values)) continue;
    const auto label = train.labels[i];
    for (std::int32_t f = 0; f < train.feature_count; ++f) {
      const auto v = values[f];
      if (v == kMissingValue || parent.has_feature(f)) continue;
      auto [it, inserted] =
          acc.try_emplace(parent.extended_with({f, v}), n_classes, 0);
      it->second[label] += 1;
    }
  }
  return acc;
}

std::vector<std::pair<ConditionSet, CombinationStats>> sorted_stats(CountMap&& acc) {
  std::vector<std::pair<ConditionSet, CombinationStats>> out;
  out.reserve(acc.size());
  for (auto& [cs, counts] : acc) {
    out.emplace_back(cs, CombinationStats::from_counts(std::move(counts)));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void validate_training_set(const TrainingSet& train) {
  if (train.instances.empty()) {
    throw std::invalid_argument("build_model: empty training set");
  }
  if (train.class_labels.size() < 2) {
    throw std::invalid_argument("build_model: degenerate labels");
  }
  if (train.labels.size() != train.instances.size()) {
    throw std::invalid_argument("build_model: label/instance count mismatch");
  }
  std::set<std::int32_t> seen_labels;
  for (std::size_t i = 0; i < train.instances.size(); ++i) {
    if (static_cast<int>(train.instances[i].size()) != train.feature_count) {
      throw std::invalid_argument("build_model: instance " + std::to_string(i) +
                                  " has wrong feature count");
    }
    const auto label = train.labels[i];
    if (label < 0 || label >= static_cast<std::int32_t>(train.class_labels.size())) {
      throw std::invalid_argument("build_model: label out of range at instance " +
                                  std::to_string(i));
    }
    seen_labels.insert(label);
  }
  if (seen_labels.size() < 2) {
    throw std::invalid_argument("build_model: degenerate labels");
  }
}

ModelMetadata complete_metadata(const TrainingSet& train, ModelMetadata metadata) {
  if (metadata.value_tokens.empty()) {
    // no schema supplied: synthesize decimal tokens covering observed codes
    std::vector<std::int32_t> max_code(train.feature_count, -1);
    for (const auto& values : train.instances) {
      for (std::int32_t f = 0; f < train.feature_count; ++f) {
        max_code[f] = std::max(max_code[f], values[f]);
      }
    }
    metadata.value_tokens.resize(train.feature_count);
    for (std::int32_t f = 0; f < train.feature_count; ++f) {
      for (std::int32_t v = 0; v <= max_code[f]; ++v) {
        metadata.value_tokens[f].push_back(std::to_string(v));
      }
    }
  }
  if (static_cast<int>(metadata.value_tokens.size()) != train.feature_count) {
    throw std::invalid_argument("build_model: metadata feature count mismatch");
  }
  return metadata;
}

}  // namespace

CombinationStats count_combination(const TrainingSet& train, const ConditionSet& cs) {
  std::vector<std::int64_t> counts(train.class_labels.size(), 0);
  for (std::size_t i = 0; i < train.instances.size(); ++i) {
    if (matches(cs, train.instances[i])) counts[train.labels[i]] += 1;
  }
  return CombinationStats::from_counts(std::move(counts));
}

std::vector<std::pair<ConditionSet, CombinationStats>> enumerate_children(
    const TrainingSet& train, const ConditionSet& parent, int max_depth) {
  if (static_cast<int>(parent.size()) >= max_depth) {
    throw std::invalid_argument("enumerate_children: parent already at max depth");
  }
  return sorted_stats(extension_counts(train, parent));
}

std::vector<ConditionSet> select_top_children(
    std::span<const std::pair<ConditionSet, CombinationStats>> children, int k,
    ImpurityMeasure measure) {
  if (k < 1) throw std::invalid_argument("select_top_children: k must be >= 1");
  struct Ranked {
    double impurity;
    std::int64_t n_train;
    const ConditionSet* set;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(children.size());
  for (const auto& [cs, stats] : children) {
    if (stats.n_train <= 0) continue;
    ranked.push_back({impurity(stats, measure), stats.n_train, &cs});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.impurity != b.impurity) return a.impurity < b.impurity;
    if (a.n_train != b.n_train) return a.n_train > b.n_train;
    return *a.set < *b.set;
  });
  if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
  std::vector<ConditionSet> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back(*r.set);
  return out;
}

SeriesModel build_model(const TrainingSet& train, const Hyperparameters& params,
                        ModelMetadata metadata) {
  params.validate();
  validate_training_set(train);
  metadata = complete_metadata(train, metadata);

  const auto n_classes = train.class_labels.size();
  SeriesModel::StatsTable stats;
  SeriesModel::ChildrenIndex children;

  {
    std::vector<std::int64_t> root(n_classes, 0);
    for (std::size_t i = 0; i < train.instances.size(); ++i) root[train.labels[i]] += 1;
    stats.emplace(ConditionSet{}, CombinationStats::from_counts(std::move(root)));
  }

  // depths 1 and 2 are exhaustive (capped by max_depth)
  CountMap level1;
  CountMap level2;
  for (std::size_t i = 0; i < train.instances.size(); ++i) {
    const auto& values = train.instances[i];
    const auto label = train.labels[i];
    for (std::int32_t f = 0; f < train.feature_count; ++f) {
      if (values[f] == kMissingValue) continue;
      auto [it, ins] = level1.try_emplace(
          ConditionSet{{FeatureCondition{f, values[f]}}}, n_classes, 0);
      it->second[label] += 1;
      if (params.max_depth < 2) continue;
      for (std::int32_t g = f + 1; g < train.feature_count; ++g) {
        if (values[g] == kMissingValue) continue;
        auto [jt, jns] = level2.try_emplace(
            ConditionSet{{FeatureCondition{f, values[f]}, FeatureCondition{g, values[g]}}},
            n_classes, 0);
        jt->second[label] += 1;
      }
    }
  }

  std::vector<ConditionSet> size1_keys;
  size1_keys.reserve(level1.size());
  for (auto& [cs, counts] : level1) {
    size1_keys.push_back(cs);
    stats.emplace(cs, CombinationStats::from_counts(std::move(counts)));
  }
  std::sort(size1_keys.begin(), size1_keys.end());
  children.emplace(ConditionSet{}, size1_keys);

  std::vector<ConditionSet> frontier;
  if (params.max_depth >= 2) {
    frontier.reserve(level2.size());
    for (auto& [cs, counts] : level2) {
      frontier.push_back(cs);
      stats.emplace(cs, CombinationStats::from_counts(std::move(counts)));
    }
    std::sort(frontier.begin(), frontier.end());
    // level 2 is exhaustive, so membership gives each size-1 set its children
    for (const auto& key : size1_keys) children.emplace(key, std::vector<ConditionSet>{});
    for (const auto& cs : frontier) {
      for (const auto& cond : cs.conditions()) {
        std::vector<FeatureCondition> other;
        for (const auto& c : cs.conditions()) {
          if (!(c == cond)) other.push_back(c);
        }
        children[ConditionSet{std::move(other)}].push_back(cs);
      }
    }
  }

  // deeper levels keep only the purest branch_top_k children per combination
  for (int depth = 2; depth < params.max_depth && !frontier.empty(); ++depth) {
    std::vector<ConditionSet> next;
    for (const auto& cs : frontier) {
      auto candidates = sorted_stats(extension_counts(train, cs));
      auto selected = select_top_children(candidates, params.branch_top_k, params.impurity);
      std::sort(selected.begin(), selected.end());
      for (const auto& sel : selected) {
        if (!stats.contains(sel)) {
          auto it = std::lower_bound(
              candidates.begin(), candidates.end(), sel,
              [](const auto& entry, const ConditionSet& key) { return entry.first < key; });
          stats.emplace(sel, it->second);
        }
        next.push_back(sel);
      }
      children.emplace(cs, std::move(selected));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }

  return SeriesModel::assemble(params, train.class_labels, std::move(metadata),
                               std::move(stats), std::move(children));
}

}  // namespace seriescls
