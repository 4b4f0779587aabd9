#ifndef SERIESCLS_TRAINER_HPP
#define SERIESCLS_TRAINER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seriescls/model.hpp"
#include "seriescls/types.hpp"

namespace seriescls {

// Encoded categorical training data. Feature values are dense codes per
// feature, kMissingValue where absent; labels are indices into class_labels.
struct TrainingSet {
  std::vector<std::vector<std::int32_t>> instances;
  std::vector<std::int32_t> labels;
  int feature_count = 0;
  std::vector<std::string> class_labels;

  std::size_t size() const { return instances.size(); }
};

// Counts class outcomes over the instances matching every condition in cs.
// Instances missing a value at a conditioned feature do not match. The empty
// set matches everything.
CombinationStats count_combination(const TrainingSet& train, const ConditionSet& cs);

// All single-condition extensions of `parent` with nonzero backing, with
// their counts, sorted canonically. Throws if parent is already at max_depth.
std::vector<std::pair<ConditionSet, CombinationStats>> enumerate_children(
    const TrainingSet& train, const ConditionSet& parent, int max_depth);

// The k children with the purest class distributions. Ties broken by larger
// backing count, then by canonical set order, so selection is total and
// deterministic. Zero-count children are excluded.
std::vector<ConditionSet> select_top_children(
    std::span<const std::pair<ConditionSet, CombinationStats>> children, int k,
    ImpurityMeasure measure = ImpurityMeasure::kGini);

// Builds the retained-combination hierarchy: exhaustive at depths 1 and 2
// (capped at max_depth), top-branch_top_k children per combination beyond
// that. Shared combinations are stored once under their canonical key.
SeriesModel build_model(const TrainingSet& train, const Hyperparameters& params,
                        ModelMetadata metadata = {});

}  // namespace seriescls

#endif  // SERIESCLS_TRAINER_HPP
