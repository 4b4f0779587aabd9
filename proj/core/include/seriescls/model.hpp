#ifndef SERIESCLS_MODEL_HPP
#define SERIESCLS_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seriescls/types.hpp"

namespace seriescls {

// Display metadata carried alongside the statistics so a trained model can
// encode raw tokens and render readable reports on its own.
struct ModelMetadata {
  std::vector<std::string> feature_names;              // may be empty
  std::vector<std::vector<std::string>> value_tokens;  // per feature: code -> token
  std::string missing_token = "?";
};

// A query: one categorical code per model feature, kMissingValue where the
// value is absent (or was unknown to the training data).
struct QueryInstance {
  std::vector<std::int32_t> values;
};

// The pruned hierarchy of feature-value combinations retained at training
// time, plus everything needed to evaluate and explain predictions.
// Immutable once assembled; safe for shared concurrent reads.
class SeriesModel {
 public:
  using StatsTable = std::unordered_map<ConditionSet, CombinationStats, ConditionSetHash>;
  using ChildrenIndex =
      std::unordered_map<ConditionSet, std::vector<ConditionSet>, ConditionSetHash>;

  // Validates all structural invariants (root present, counts consistent,
  // children known, no child backed by more data than a present parent) and
  // throws std::invalid_argument on the first violation.
  static SeriesModel assemble(Hyperparameters params,
                              std::vector<std::string> class_labels,
                              ModelMetadata metadata, StatsTable stats,
                              ChildrenIndex children);

  const Hyperparameters& params() const { return params_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  const ModelMetadata& metadata() const { return metadata_; }
  int feature_count() const { return static_cast<int>(metadata_.value_tokens.size()); }
  int class_count() const { return static_cast<int>(class_labels_.size()); }

  const CombinationStats& root_stats() const { return *root_; }
  std::int64_t training_size() const { return root_->n_train; }

  // nullptr when the combination was not retained.
  const CombinationStats* find(const ConditionSet& cs) const {
    auto it = stats_.find(cs);
    return it == stats_.end() ? nullptr : &it->second;
  }

  // Retained children, canonically sorted. Empty span for leaves.
  std::span<const ConditionSet> children_of(const ConditionSet& cs) const {
    auto it = children_.find(cs);
    if (it == children_.end()) return {};
    return it->second;
  }

  const StatsTable& stats_table() const { return stats_; }
  const ChildrenIndex& children_index() const { return children_; }

  std::size_t combination_count() const { return stats_.size(); }
  // combinations retained at each depth, index 0 = the base-rate node
  std::vector<std::size_t> combinations_per_depth() const;

  // Same statistics under different inference-time settings. Structure
  // (max_depth, branch_top_k, impurity) is baked into the tables and cannot
  // be changed here.
  SeriesModel with_inference_params(double noise_count, double saturation_count,
                                    bool use_usefulness) const;

  int class_index(std::string_view label) const;  // -1 when unknown

  // Encodes raw tokens against the stored value maps. Unknown tokens and the
  // missing token both map to kMissingValue; *had_unknown reports whether any
  // unknown (non-missing) token was seen.
  QueryInstance encode_instance(std::span<const std::string> tokens,
                                bool* had_unknown = nullptr) const;
  std::vector<std::string> decode_instance(const QueryInstance& instance) const;

  // Human-readable name for one condition, e.g. "Physician fee freeze = y"
  // or "x3=1" when no metadata is available.
  std::string describe_condition(const FeatureCondition& c) const;
  std::string describe_set(const ConditionSet& cs) const;

 private:
  SeriesModel() = default;

  Hyperparameters params_;
  std::vector<std::string> class_labels_;
  ModelMetadata metadata_;
  StatsTable stats_;
  ChildrenIndex children_;
  const CombinationStats* root_ = nullptr;  // points into stats_
};

}  // namespace seriescls

#endif  // SERIESCLS_MODEL_HPP
