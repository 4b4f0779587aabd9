#ifndef SERIESCLS_INFERENCE_HPP
#define SERIESCLS_INFERENCE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seriescls/model.hpp"
#include "seriescls/types.hpp"

namespace seriescls {

// One child's term in a node's weighted average. `weight` is normalized over
// the whole node: all child weights plus the node's self_weight sum to 1.
struct ChildTerm {
  ConditionSet child;
  double scaling = 0.0;     // S
  double backing = 0.0;     // N
  double usefulness = 1.0;  // U
  double weight = 0.0;
};

// Evaluation record for one combination and one class.
struct EvalNode {
  ConditionSet condition_set;
  double p_measured = 0.0;
  double p_refined = 0.0;
  std::int64_t n_train = 0;
  double self_weight = 1.0;  // share kept by this node's own measured value
  std::vector<ChildTerm> child_terms;
};

// Per-class estimates plus the full evaluation trace needed for attribution.
// Self-contained: carries counts and labels so explanations do not need the
// model again.
struct PredictionResult {
  // Combinations that matched the instance, in breadth-first depth order;
  // nodes[0] is the base-rate (empty) combination.
  std::vector<ConditionSet> nodes;
  std::vector<std::vector<std::int64_t>> node_counts;  // per node: per-class counts
  std::vector<std::vector<EvalNode>> per_class;        // [class][node index]
  std::vector<double> estimates;                       // [class] refined estimate at the root
  std::vector<std::string> class_labels;
  std::int32_t predicted = 0;

  const std::string& predicted_label() const { return class_labels.at(predicted); }
};

// Evaluates the series at every matching retained combination, once per
// class, and takes the argmax (ties: first label). Missing features simply
// contribute no terms; an all-missing instance falls back to the base rates.
PredictionResult predict(const SeriesModel& model, const QueryInstance& instance);

// Elementwise predict, order preserved. jobs > 1 fans out across threads.
std::vector<PredictionResult> predict_batch(const SeriesModel& model,
                                            std::span<const QueryInstance> instances,
                                            int jobs = 1);

// Refined per-class estimates without trace bookkeeping; what evaluation
// loops use.
std::vector<double> predict_estimates(const SeriesModel& model,
                                      const QueryInstance& instance);

// argmax over predict_estimates with the same tie rule as predict.
std::int32_t predict_class(const SeriesModel& model, const QueryInstance& instance);

// Evaluates one combination the instance matches. cs must be retained
// ("unknown combination" otherwise) and all its conditions must match the
// instance. Shared subcombinations are evaluated once.
EvalNode evaluate_node(const SeriesModel& model, const ConditionSet& cs,
                       const QueryInstance& instance, int class_index);

namespace detail {

// The sub-hierarchy of retained combinations matching one instance. Children
// always come after their parents, so one reverse sweep evaluates the series.
// Structure depends only on (model tables, instance), not on inference
// parameters, so it can be reused across parameter settings.
struct MatchedDag {
  std::vector<const ConditionSet*> sets;          // borrowed from the model
  std::vector<const CombinationStats*> stats;     // borrowed from the model
  std::vector<std::vector<std::int32_t>> children;
};

struct EvalParams {
  double noise_count;
  double saturation_count;
  bool use_usefulness;
};

MatchedDag build_matched_dag(const SeriesModel& model, const QueryInstance& instance);

// Fills `refined` (size = dag nodes) with the per-node refined estimates for
// one class; refined[0] is the overall estimate.
void evaluate_dag(const MatchedDag& dag, int class_index, const EvalParams& params,
                  std::vector<double>& refined);

}  // namespace detail

}  // namespace seriescls

#endif  // SERIESCLS_INFERENCE_HPP
