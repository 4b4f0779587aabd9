#ifndef SERIESCLS_EXPLAIN_HPP
#define SERIESCLS_EXPLAIN_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seriescls/inference.hpp"
#include "seriescls/model.hpp"

namespace seriescls {

// One combination's share of a prediction. cumulative_weight is path-summed:
// a combination reachable through several parents gets the total mass that
// reached it, so all weights of one prediction partition 1 and
// sum(p_measured * cumulative_weight) reconstructs the refined estimate.
struct CombinationContribution {
  ConditionSet condition_set;
  std::vector<std::int64_t> class_counts;
  double p_measured = 0.0;
  double cumulative_weight = 0.0;
};

// One top-level feature's refined estimate and its normalized weight in the
// root average. Weights plus the root's own fallback share sum to 1.
struct FeatureContribution {
  FeatureCondition condition;
  double p_refined = 0.0;
  double weight = 0.0;
};

// Flattens the evaluation trace for one class into per-combination weights,
// sorted by weight descending (ties: canonical set order).
std::vector<CombinationContribution> attribute_combinations(
    const PredictionResult& result, int class_index);

// Top-level rollup: one entry per feature condition matched at the root,
// sorted by weight descending.
std::vector<FeatureContribution> attribute_features(const PredictionResult& result,
                                                    int class_index);

// The root's fallback share for one class; completes attribute_features to a
// partition of 1.
double root_fallback_weight(const PredictionResult& result, int class_index);

// Aligned text table of the top_n heaviest combinations with counts,
// measured probability, weight and running cumulative weight. Rows below
// top_n (or under a 1e-4 display threshold) are folded into one "(other)"
// row so displayed weights still total 1.
std::string render_combination_report(const SeriesModel& model,
                                      std::span<const CombinationContribution> contributions,
                                      const PredictionResult& result, int class_index,
                                      int top_n);

std::string render_feature_report(const SeriesModel& model,
                                  std::span<const FeatureContribution> features,
                                  const PredictionResult& result, int class_index,
                                  int top_n);

// Machine-readable variant: one "key=value ..." record per line. The format
// is documented in the README (Explanation records).
std::string render_combination_records(const SeriesModel& model,
                                       std::span<const CombinationContribution> contributions,
                                       int top_n);
std::string render_feature_records(const SeriesModel& model,
                                   std::span<const FeatureContribution> features,
                                   int top_n);

}  // namespace seriescls

#endif  // SERIESCLS_EXPLAIN_HPP
