#include "seriescls/inference.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "parallel.hpp"
#include "seriescls/kernels.hpp"

namespace seriescls {

namespace {

bool condition_matches(const FeatureCondition& c, const std::vector<std::int32_t>& values) {
  return values[c.feature] == c.value;  // kMissingValue never matches
}

bool set_matches(const ConditionSet& cs, const std::vector<std::int32_t>& values) {
  for (const auto& c : cs.conditions()) {
    if (!condition_matches(c, values)) return false;
  }
  return true;
}

// Breadth-first collection of every retained combination that matches the
// instance, rooted at `start`. Shared combinations get one node, so the
// memoized evaluation and the attribution mass flow are well-defined.
detail::MatchedDag dag_from(const SeriesModel& model, const QueryInstance& instance,
                            const ConditionSet& start) {
  detail::MatchedDag dag;
  std::unordered_map<ConditionSet, std::int32_t, ConditionSetHash> seen;

  const CombinationStats* root_stats = model.find(start);
  if (root_stats == nullptr) {
    throw std::invalid_argument("evaluate: unknown combination");
  }
  auto start_it = model.stats_table().find(start);
  dag.sets.push_back(&start_it->first);
  dag.stats.push_back(root_stats);
  dag.children.emplace_back();
  seen.emplace(start, 0);

  for (std::size_t i = 0; i < dag.sets.size(); ++i) {
    for (const auto& child : model.children_of(*dag.sets[i])) {
      if (!set_matches(child, instance.values)) continue;
      auto it = seen.find(child);
      std::int32_t idx;
      if (it == seen.end()) {
        auto stored = model.stats_table().find(child);
        idx = static_cast<std::int32_t>(dag.sets.size());
        dag.sets.push_back(&stored->first);
        dag.stats.push_back(&stored->second);
        dag.children.emplace_back();
        seen.emplace(child, idx);
      } else {
        idx = it->second;
      }
      dag.children[i].push_back(idx);
    }
  }
  return dag;
}

void check_instance(const SeriesModel& model, const QueryInstance& instance) {
  if (static_cast<int>(instance.values.size()) != model.feature_count()) {
    throw std::invalid_argument("predict: instance has " +
                                std::to_string(instance.values.size()) +
                                " values, model expects " +
                                std::to_string(model.feature_count()));
  }
}

std::int32_t argmax_first(std::span<const double> estimates) {
  std::int32_t best = 0;
  for (std::int32_t c = 1; c < static_cast<std::int32_t>(estimates.size()); ++c) {
    if (estimates[c] > estimates[best]) best = c;
  }
  return best;
}

// Rebuilds the weighted-average terms of one evaluated node as a trace
// record. Same arithmetic as evaluate_dag, kept in lockstep.
EvalNode make_trace_node(const detail::MatchedDag& dag, std::size_t i, int class_index,
                         const detail::EvalParams& params,
                         const std::vector<double>& refined) {
  const CombinationStats& st = *dag.stats[i];
  EvalNode node;
  node.condition_set = *dag.sets[i];
  node.n_train = st.n_train;
  node.p_measured = measured_probability(st, class_index);
  node.p_refined = refined[i];
  if (dag.children[i].empty()) {
    node.self_weight = 1.0;
    return node;
  }
  double sum_w = 0.0;
  double max_backing = 0.0;
  node.child_terms.reserve(dag.children[i].size());
  for (const auto j : dag.children[i]) {
    const double p_child = refined[j];
    const double n_child = static_cast<double>(dag.stats[j]->n_train);
    ChildTerm term;
    term.child = *dag.sets[j];
    term.scaling =
        scaling_weight(clamp_probability(p_child, n_child, params.noise_count));
    term.backing = backing_weight(n_child, params.saturation_count);
    term.usefulness =
        usefulness_weight(p_child, node.p_measured, params.use_usefulness);
    term.weight = term.scaling * term.backing * term.usefulness;  // normalized below
    sum_w += term.weight;
    max_backing = std::max(max_backing, term.backing);
    node.child_terms.push_back(std::move(term));
  }
  const double own_backing =
      backing_weight(static_cast<double>(st.n_train), params.saturation_count);
  const double ratio = max_backing / own_backing;
  for (auto& term : node.child_terms) term.weight = ratio * term.weight / sum_w;
  node.self_weight = 1.0 - ratio;
  return node;
}

detail::EvalParams eval_params_of(const SeriesModel& model) {
  return {model.params().noise_count, model.params().saturation_count,
          model.params().use_usefulness};
}

}  // namespace

namespace detail {

MatchedDag build_matched_dag(const SeriesModel& model, const QueryInstance& instance) {
  check_instance(model, instance);
  return dag_from(model, instance, ConditionSet{});
}

void evaluate_dag(const MatchedDag& dag, int class_index, const EvalParams& params,
                  std::vector<double>& refined) {
  refined.resize(dag.sets.size());
  for (std::size_t r = dag.sets.size(); r-- > 0;) {
    const CombinationStats& st = *dag.stats[r];
    const double p_measured = measured_probability(st, class_index);
    if (dag.children[r].empty()) {
      refined[r] = p_measured;
      continue;
    }
    double sum_w = 0.0;
    double sum_wp = 0.0;
    double max_backing = 0.0;
    for (const auto j : dag.children[r]) {
      const double p_child = refined[j];
      const double n_child = static_cast<double>(dag.stats[j]->n_train);
      const double s =
          scaling_weight(clamp_probability(p_child, n_child, params.noise_count));
      const double n = backing_weight(n_child, params.saturation_count);
      const double u =
          usefulness_weight(p_child, p_measured, params.use_usefulness);
      const double w = s * n * u;
      sum_w += w;
      sum_wp += w * p_child;
      max_backing = std::max(max_backing, n);
    }
    const double own_backing =
        backing_weight(static_cast<double>(st.n_train), params.saturation_count);
    refined[r] = blend_with_parent(sum_wp / sum_w, max_backing, own_backing, p_measured);
  }
}

}  // namespace detail

PredictionResult predict(const SeriesModel& model, const QueryInstance& instance) {
  const auto dag = detail::build_matched_dag(model, instance);
  const auto params = eval_params_of(model);
  const int n_classes = model.class_count();

  PredictionResult result;
  result.class_labels = model.class_labels();
  result.nodes.reserve(dag.sets.size());
  result.node_counts.reserve(dag.sets.size());
  for (std::size_t i = 0; i < dag.sets.size(); ++i) {
    result.nodes.push_back(*dag.sets[i]);
    result.node_counts.push_back(dag.stats[i]->class_counts);
  }
  result.per_class.resize(n_classes);
  result.estimates.resize(n_classes);

  std::vector<double> refined;
  for (int c = 0; c < n_classes; ++c) {
    detail::evaluate_dag(dag, c, params, refined);
    auto& trace = result.per_class[c];
    trace.reserve(dag.sets.size());
    for (std::size_t i = 0; i < dag.sets.size(); ++i) {
      trace.push_back(make_trace_node(dag, i, c, params, refined));
    }
    result.estimates[c] = refined[0];
  }
  result.predicted = argmax_first(result.estimates);
  return result;
}

std::vector<PredictionResult> predict_batch(const SeriesModel& model,
                                            std::span<const QueryInstance> instances,
                                            int jobs) {
  std::vector<PredictionResult> results(instances.size());
  detail::parallel_for(instances.size(), jobs,
                       [&](std::size_t i) { results[i] = predict(model, instances[i]); });
  return results;
}

std::vector<double> predict_estimates(const SeriesModel& model,
                                      const QueryInstance& instance) {
  const auto dag = detail::build_matched_dag(model, instance);
  const auto params = eval_params_of(model);
  std::vector<double> estimates(model.class_count());
  std::vector<double> refined;
  for (int c = 0; c < model.class_count(); ++c) {
    detail::evaluate_dag(dag, c, params, refined);
    estimates[c] = refined[0];
  }
  return estimates;
}

std::int32_t predict_class(const SeriesModel& model, const QueryInstance& instance) {
  const auto estimates = predict_estimates(model, instance);
  return argmax_first(estimates);
}

EvalNode evaluate_node(const SeriesModel& model, const ConditionSet& cs,
                       const QueryInstance& instance, int class_index) {
  check_instance(model, instance);
  if (class_index < 0 || class_index >= model.class_count()) {
    throw std::invalid_argument("evaluate_node: class index out of range");
  }
  if (!set_matches(cs, instance.values)) {
    throw std::invalid_argument("evaluate_node: conditions do not match the instance");
  }
  const auto dag = dag_from(model, instance, cs);  // throws "unknown combination"
  const auto params = eval_params_of(model);
  std::vector<double> refined;
  detail::evaluate_dag(dag, class_index, params, refined);
  return make_trace_node(dag, 0, class_index, params, refined);
}

}  // namespace seriescls
