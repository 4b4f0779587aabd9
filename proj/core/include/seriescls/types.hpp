#ifndef SERIESCLS_TYPES_HPP
#define SERIESCLS_TYPES_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace seriescls {

// Sentinel for an absent categorical value, both in training instances and
// in query instances.
inline constexpr std::int32_t kMissingValue = -1;

// One equality constraint "feature == categorical value code".
struct FeatureCondition {
  std::int32_t feature = 0;
  std::int32_t value = 0;

  auto operator<=>(const FeatureCondition&) const = default;
};

// Sorted, duplicate-free set of conditions. The canonical ordering makes the
// set a lookup key: {i,j} and {j,i} name the same statistics record.
class ConditionSet {
 public:
  ConditionSet() = default;

  // Sorts by feature index; throws std::invalid_argument if two conditions
  // constrain the same feature.
  explicit ConditionSet(std::vector<FeatureCondition> conditions)
      : conditions_(std::move(conditions)) {
    std::sort(conditions_.begin(), conditions_.end());
    for (std::size_t i = 1; i < conditions_.size(); ++i) {
      if (conditions_[i].feature == conditions_[i - 1].feature) {
        throw std::invalid_argument(
            "ConditionSet: duplicate feature index " +
            std::to_string(conditions_[i].feature));
      }
    }
  }

  const std::vector<FeatureCondition>& conditions() const { return conditions_; }
  std::size_t size() const { return conditions_.size(); }
  bool empty() const { return conditions_.empty(); }

  bool has_feature(std::int32_t feature) const {
    for (const auto& c : conditions_) {
      if (c.feature == feature) return true;
    }
    return false;
  }

  // Returns this set plus one more condition, keeping the canonical order.
  ConditionSet extended_with(FeatureCondition added) const {
    ConditionSet out;
    out.conditions_.reserve(conditions_.size() + 1);
    bool placed = false;
    for (const auto& c : conditions_) {
      if (c.feature == added.feature) {
        throw std::invalid_argument("ConditionSet: feature already constrained");
      }
      if (!placed && added.feature < c.feature) {
        out.conditions_.push_back(added);
        placed = true;
      }
      out.conditions_.push_back(c);
    }
    if (!placed) out.conditions_.push_back(added);
    return out;
  }

  // Lexicographic; gives the total order used for deterministic tie-breaks.
  auto operator<=>(const ConditionSet&) const = default;

 private:
  std::vector<FeatureCondition> conditions_;
};

struct ConditionSetHash {
  std::size_t operator()(const ConditionSet& cs) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& c : cs.conditions()) {
      std::uint64_t packed =
          (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.feature)) << 32) |
          static_cast<std::uint32_t>(c.value);
      h ^= packed;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Per-class outcome counts for one combination of conditions. Every measured
// probability in the model comes out of one of these.
struct CombinationStats {
  std::vector<std::int64_t> class_counts;
  std::int64_t n_train = 0;  // invariant: equals the sum of class_counts

  static CombinationStats from_counts(std::vector<std::int64_t> counts) {
    CombinationStats s;
    s.n_train = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    s.class_counts = std::move(counts);
    return s;
  }
};

enum class ImpurityMeasure { kGini, kEntropy };

struct Hyperparameters {
  double noise_count = 1.0;         // n_err: examples expected to be mislabeled by noise
  double saturation_count = 100.0;  // n_max: examples needed to overcome noise
  int max_depth = 3;                // deepest combination size
  int branch_top_k = 6;             // children kept per combination beyond depth 2
  bool use_usefulness = false;
  ImpurityMeasure impurity = ImpurityMeasure::kGini;

  void validate() const {
    if (noise_count < 0.0) throw std::invalid_argument("noise_count must be >= 0");
    if (saturation_count < 1.0) throw std::invalid_argument("saturation_count must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    if (branch_top_k < 1) throw std::invalid_argument("branch_top_k must be >= 1");
  }
};

}  // namespace seriescls

#endif  // SERIESCLS_TYPES_HPP
