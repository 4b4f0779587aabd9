#ifndef SERIESCLS_EVALUATE_HPP
#define SERIESCLS_EVALUATE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seriescls/dataset.hpp"
#include "seriescls/trainer.hpp"

namespace seriescls {

// Hyperparameter grid. Points are visited noise_count-major in the field
// order below; the first best point wins ties.
struct GridSpec {
  std::vector<double> noise_counts{0.5, 1.0, 2.0, 4.0};
  std::vector<double> saturation_counts{10.0, 100.0, 1000.0};
  std::vector<int> max_depths{2, 3, 4};
  std::vector<bool> usefulness{false, true};
  int branch_top_k = 6;
  ImpurityMeasure impurity = ImpurityMeasure::kGini;

  std::size_t point_count() const {
    return noise_counts.size() * saturation_counts.size() * max_depths.size() *
           usefulness.size();
  }
  void validate() const;
};

double accuracy(std::span<const std::int32_t> predicted,
                std::span<const std::int32_t> truth);

struct CvResult {
  double mean_accuracy = 0.0;
  std::vector<double> fold_accuracies;
};

// Trains on k-1 folds, scores the held-out fold, averages. Deterministic per
// seed regardless of jobs.
CvResult cross_validate(const TrainingSet& train, const Hyperparameters& params,
                        int k, std::uint64_t seed, int jobs = 1,
                        bool allow_small_classes = false);

struct GridPointResult {
  Hyperparameters params;
  CvResult cv;
};

struct GridSearchResult {
  Hyperparameters best;
  CvResult best_cv;
  std::vector<GridPointResult> table;  // in grid iteration order
};

// Cross-validates every grid point. Counting and pruning depend only on
// max_depth/branch_top_k/impurity, so one model per (fold, depth) is reused
// across the inference-parameter points; results are identical to calling
// cross_validate per point.
GridSearchResult grid_search(const TrainingSet& train, const GridSpec& grid, int k,
                             std::uint64_t seed, int jobs = 1,
                             bool allow_small_classes = false);

// CSV table: n_err,n_max,max_depth,usefulness,fold1..foldK,mean
std::string results_table_csv(const GridSearchResult& result);

}  // namespace seriescls

#endif  // SERIESCLS_EVALUATE_HPP
