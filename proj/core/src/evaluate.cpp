#include "seriescls/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "seriescls/inference.hpp"

namespace seriescls {

namespace {

std::int32_t argmax_first(std::span<const double> estimates) {
  std::int32_t best = 0;
  for (std::int32_t c = 1; c < static_cast<std::int32_t>(estimates.size()); ++c) {
    if (estimates[c] > estimates[best]) best = c;
  }
  return best;
}

double fold_mean(const std::vector<double>& accs) {
  return std::accumulate(accs.begin(), accs.end(), 0.0) / static_cast<double>(accs.size());
}

}  // namespace

void GridSpec::validate() const {
  if (noise_counts.empty() || saturation_counts.empty() || max_depths.empty() ||
      usefulness.empty()) {
    throw std::invalid_argument("GridSpec: empty value list");
  }
  for (const auto v : noise_counts) {
    if (v < 0.0) throw std::invalid_argument("GridSpec: n_err must be >= 0");
  }
  for (const auto v : saturation_counts) {
    if (v < 1.0) throw std::invalid_argument("GridSpec: n_max must be >= 1");
  }
  for (const auto v : max_depths) {
    if (v < 1) throw std::invalid_argument("GridSpec: max_depth must be >= 1");
  }
  if (branch_top_k < 1) throw std::invalid_argument("GridSpec: branch_top_k must be >= 1");
}

double accuracy(std::span<const std::int32_t> predicted,
                std::span<const std::int32_t> truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("accuracy: length mismatch");
  }
  if (predicted.empty()) throw std::invalid_argument("accuracy: empty inputs");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

CvResult cross_validate(const TrainingSet& train, const Hyperparameters& params,
                        int k, std::uint64_t seed, int jobs,
                        bool allow_small_classes) {
  params.validate();
  const auto folds = stratified_kfold(train, k, seed, allow_small_classes);
  CvResult result;
  result.fold_accuracies.resize(folds.size());
  detail::parallel_for(folds.size(), jobs, [&](std::size_t f) {
    const auto fold_train = subset(train, folds[f].train_indices);
    const auto model = build_model(fold_train, params);
    std::vector<std::int32_t> predicted;
    std::vector<std::int32_t> truth;
    predicted.reserve(folds[f].test_indices.size());
    for (const auto i : folds[f].test_indices) {
      predicted.push_back(predict_class(model, QueryInstance{train.instances[i]}));
      truth.push_back(train.labels[i]);
    }
    result.fold_accuracies[f] = accuracy(predicted, truth);
  });
  result.mean_accuracy = fold_mean(result.fold_accuracies);
  return result;
}

GridSearchResult grid_search(const TrainingSet& train, const GridSpec& grid, int k,
                             std::uint64_t seed, int jobs, bool allow_small_classes) {
  grid.validate();
  const auto folds = stratified_kfold(train, k, seed, allow_small_classes);

  std::vector<Hyperparameters> points;
  points.reserve(grid.point_count());
  for (const auto ne : grid.noise_counts) {
    for (const auto nm : grid.saturation_counts) {
      for (const auto depth : grid.max_depths) {
        for (const auto useful : grid.usefulness) {
          Hyperparameters hp;
          hp.noise_count = ne;
          hp.saturation_count = nm;
          hp.max_depth = depth;
          hp.branch_top_k = grid.branch_top_k;
          hp.use_usefulness = useful;
          hp.impurity = grid.impurity;
          hp.validate();
          points.push_back(hp);
        }
      }
    }
  }

  std::vector<int> depths = grid.max_depths;
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

  // Counting and pruning ignore the inference-only parameters, so each
  // (fold, depth) model and each instance's matched sub-hierarchy are built
  // once and scored under every (n_err, n_max, usefulness) point.
  std::vector<std::vector<double>> acc(points.size(),
                                       std::vector<double>(folds.size(), 0.0));
  const std::size_t tasks = folds.size() * depths.size();
  detail::parallel_for(tasks, jobs, [&](std::size_t t) {
    const std::size_t f = t / depths.size();
    const int depth = depths[t % depths.size()];

    Hyperparameters build_params = points.front();
    build_params.max_depth = depth;
    const auto fold_train = subset(train, folds[f].train_indices);
    const auto model = build_model(fold_train, build_params);

    const auto& test = folds[f].test_indices;
    std::vector<detail::MatchedDag> dags;
    dags.reserve(test.size());
    for (const auto i : test) {
      dags.push_back(detail::build_matched_dag(model, QueryInstance{train.instances[i]}));
    }

    std::vector<double> refined;
    std::vector<double> estimates(model.class_count());
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (points[p].max_depth != depth) continue;
      const detail::EvalParams ep{points[p].noise_count, points[p].saturation_count,
                                  points[p].use_usefulness};
      std::size_t hits = 0;
      for (std::size_t ti = 0; ti < test.size(); ++ti) {
        for (int c = 0; c < model.class_count(); ++c) {
          detail::evaluate_dag(dags[ti], c, ep, refined);
          estimates[c] = refined[0];
        }
        if (argmax_first(estimates) == train.labels[test[ti]]) ++hits;
      }
      acc[p][f] = static_cast<double>(hits) / static_cast<double>(test.size());
    }
  });

  GridSearchResult result;
  result.table.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    GridPointResult row;
    row.params = points[p];
    row.cv.fold_accuracies = acc[p];
    row.cv.mean_accuracy = fold_mean(acc[p]);
    result.table.push_back(std::move(row));
  }
  // first point in grid order wins ties
  std::size_t best = 0;
  for (std::size_t p = 1; p < result.table.size(); ++p) {
    if (result.table[p].cv.mean_accuracy > result.table[best].cv.mean_accuracy) best = p;
  }
  result.best = result.table[best].params;
  result.best_cv = result.table[best].cv;
  return result;
}

std::string results_table_csv(const GridSearchResult& result) {
  std::ostringstream os;
  const std::size_t k =
      result.table.empty() ? 0 : result.table.front().cv.fold_accuracies.size();
  os << "n_err,n_max,max_depth,usefulness";
  for (std::size_t f = 1; f <= k; ++f) os << ",fold" << f;
  os << ",mean\n";
  char buf[32];
  for (const auto& row : result.table) {
    std::snprintf(buf, sizeof buf, "%g", row.params.noise_count);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%g", row.params.saturation_count);
    os << buf << ',' << row.params.max_depth << ','
       << (row.params.use_usefulness ? "on" : "off");
    for (const auto a : row.cv.fold_accuracies) {
      std::snprintf(buf, sizeof buf, "%.6f", a);
      os << ',' << buf;
    }
    std::snprintf(buf, sizeof buf, "%.6f", row.cv.mean_accuracy);
    os << ',' << buf << '\n';
  }
  return os.str();
}

}  // namespace seriescls
