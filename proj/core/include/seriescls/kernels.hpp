#ifndef SERIESCLS_KERNELS_HPP
#define SERIESCLS_KERNELS_HPP

#include <cmath>
#include <stdexcept>

#include "seriescls/types.hpp"

// Pure numeric kernels composed by the inference recursion. All functions of
// their arguments only; safe from any number of threads.

namespace seriescls {

// Smallest usefulness weight. Keeps a child whose probability matches its
// parent from being dropped entirely and keeps the weighted-average
// denominator nonzero when every child matches the parent.
inline constexpr double kUsefulnessFloor = 0.01;

// Empirical class frequency among the instances backing `stats`.
inline double measured_probability(const CombinationStats& stats, int class_index) {
  if (stats.n_train <= 0) throw std::invalid_argument("measured_probability: no backing data");
  return static_cast<double>(stats.class_counts.at(class_index)) /
         static_cast<double>(stats.n_train);
}

// Restricts a probability estimate to [n_err/n, 1 - n_err/n] so the scaling
// weight cannot blow up on thinly backed estimates. Undersized backing
// (n_train <= n_err, or bounds that cross at n_train < 2*n_err) collapses to
// 0.5: the estimate carries no usable signal. Strictly inside (0,1) whenever
// n_err > 0.
inline double clamp_probability(double p_est, double n_train, double n_err) {
  if (n_train <= n_err) return 0.5;
  const double lo = n_err / n_train;
  if (lo >= 0.5) return 0.5;
  if (p_est < lo) return lo;
  if (p_est > 1.0 - lo) return 1.0 - lo;
  return p_est;
}

// Weight emphasizing probabilities near 0 or 1: 1/(p(1-p)), minimum 4 at
// p = 0.5, symmetric about 0.5. Callers must clamp first.
inline double scaling_weight(double p_clamped) {
  if (p_clamped <= 0.0 || p_clamped >= 1.0) {
    throw std::invalid_argument("scaling_weight: unclamped probability");
  }
  return 1.0 / (p_clamped * (1.0 - p_clamped));
}

// Evidential support for an estimate: sqrt of the backing count, saturating
// at sqrt(n_max).
inline double backing_weight(double n_train, double n_max) {
  return std::min(std::sqrt(n_train), std::sqrt(n_max));
}

// Weight favoring children whose estimate deviates from the parent's.
// Deviation in either direction is new information, so the magnitude is
// used; the floor keeps the weight strictly positive.
inline double usefulness_weight(double p_child, double p_parent, bool use_usefulness) {
  if (!use_usefulness) return 1.0;
  const double denom = p_child + p_parent;
  if (denom <= 0.0) return kUsefulnessFloor;
  const double u = std::abs(p_child - p_parent) / denom;
  return u < kUsefulnessFloor ? kUsefulnessFloor : u;
}

// Convex blend of the children's weighted average toward the parent's own
// measured probability when no child is strongly backed.
inline double blend_with_parent(double weighted_avg, double max_child_backing,
                                double parent_backing, double p_parent) {
  if (max_child_backing > parent_backing) {
    throw std::invalid_argument("blend_with_parent: child outweighs parent");
  }
  const double ratio = max_child_backing / parent_backing;
  return ratio * weighted_avg + (1.0 - ratio) * p_parent;
}

// 1 - sum(p_c^2). Zero iff exactly one class has nonzero count.
inline double gini_impurity(const CombinationStats& stats) {
  if (stats.n_train <= 0) throw std::invalid_argument("gini_impurity: no backing data");
  double acc = 0.0;
  for (const auto c : stats.class_counts) {
    const double p = static_cast<double>(c) / static_cast<double>(stats.n_train);
    acc += p * p;
  }
  return 1.0 - acc;
}

// Shannon entropy in bits; alternative child-ranking measure.
inline double entropy_impurity(const CombinationStats& stats) {
  if (stats.n_train <= 0) throw std::invalid_argument("entropy_impurity: no backing data");
  double acc = 0.0;
  for (const auto c : stats.class_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(stats.n_train);
    acc -= p * std::log2(p);
  }
  return acc;
}

inline double impurity(const CombinationStats& stats, ImpurityMeasure measure) {
  return measure == ImpurityMeasure::kGini ? gini_impurity(stats)
                                           : entropy_impurity(stats);
}

}  // namespace seriescls

#endif  // SERIESCLS_KERNELS_HPP
