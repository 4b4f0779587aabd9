#include <random>

#include <doctest.h>

#include "seriescls/evaluate.hpp"
#include "support/synthetic.hpp"

using namespace seriescls;
namespace st = seriescls::testing;

namespace {

// 100 instances, 60/40, feature carries no signal
TrainingSet majority_data() {
  TrainingSet train;
  train.feature_count = 1;
  train.class_labels = {"maj", "min"};
  for (int i = 0; i < 100; ++i) {
    train.instances.push_back({0});
    train.labels.push_back(i < 60 ? 0 : 1);
  }
  return train;
}

// labels fully determined by x0 XOR x1; depth 1 cannot separate it
TrainingSet xor_data() {
  TrainingSet train;
  train.feature_count = 2;
  train.class_labels = {"even", "odd"};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int rep = 0; rep < 8; ++rep) {
        train.instances.push_back({a, b});
        train.labels.push_back(a ^ b);
      }
    }
  }
  return train;
}

}  // namespace

TEST_CASE("accuracy is the exact match fraction") {
  const std::vector<std::int32_t> truth{0, 1, 0, 1};
  CHECK(accuracy(truth, truth) == 1.0);
  CHECK(accuracy(std::vector<std::int32_t>{0, 1, 1, 0}, truth) == 0.5);
  CHECK_THROWS_WITH_AS(accuracy(std::vector<std::int32_t>{0}, truth),
                       doctest::Contains("length mismatch"), std::invalid_argument);
  CHECK_THROWS_AS(accuracy({}, {}), std::invalid_argument);
}

TEST_CASE("signal-free data scores exactly the majority rate") {
  Hyperparameters hp;
  hp.max_depth = 1;
  const auto cv = cross_validate(majority_data(), hp, 4, 5);
  CHECK(cv.mean_accuracy == 0.6);
  for (const auto a : cv.fold_accuracies) CHECK(a == 0.6);
}

TEST_CASE("symmetric toy data gives identical fold accuracies") {
  TrainingSet train;
  train.feature_count = 1;
  train.class_labels = {"a", "b"};
  for (int i = 0; i < 12; ++i) {
    train.instances.push_back({i % 2});
    train.labels.push_back(i % 2);
  }
  Hyperparameters hp;
  hp.max_depth = 1;
  const auto cv = cross_validate(train, hp, 2, 3);
  CHECK(cv.fold_accuracies[0] == cv.fold_accuracies[1]);
  CHECK(cv.mean_accuracy == 1.0);
}

TEST_CASE("cross_validate is deterministic and parallel-safe") {
  std::mt19937_64 rng(179);
  st::SyntheticSpec spec;
  spec.n_features = 5;
  spec.n_instances = 60;
  const auto train = st::to_training_set(st::random_dataset(spec, rng));
  Hyperparameters hp;
  hp.max_depth = 2;
  const auto a = cross_validate(train, hp, 4, 11, 1);
  const auto b = cross_validate(train, hp, 4, 11, 4);
  CHECK(a.fold_accuracies == b.fold_accuracies);
}

TEST_CASE("grid_search with one point equals cross_validate") {
  std::mt19937_64 rng(181);
  st::SyntheticSpec spec;
  spec.n_features = 4;
  spec.n_instances = 40;
  const auto train = st::to_training_set(st::random_dataset(spec, rng));
  GridSpec grid;
  grid.noise_counts = {1.0};
  grid.saturation_counts = {100.0};
  grid.max_depths = {2};
  grid.usefulness = {true};
  const auto gs = grid_search(train, grid, 4, 17);
  REQUIRE(gs.table.size() == 1);

  Hyperparameters hp;
  hp.noise_count = 1.0;
  hp.saturation_count = 100.0;
  hp.max_depth = 2;
  hp.use_usefulness = true;
  const auto cv = cross_validate(train, hp, 4, 17);
  CHECK(gs.best_cv.fold_accuracies == cv.fold_accuracies);
  CHECK(gs.best_cv.mean_accuracy == cv.mean_accuracy);
}

TEST_CASE("model reuse across inference points matches per-point training") {
  std::mt19937_64 rng(191);
  st::SyntheticSpec spec;
  spec.n_features = 5;
  spec.n_values = 2;
  spec.n_instances = 48;
  spec.missing_rate = 0.1;
  const auto train = st::to_training_set(st::random_dataset(spec, rng));
  GridSpec grid;
  grid.noise_counts = {0.5, 2.0};
  grid.saturation_counts = {10.0, 100.0};
  grid.max_depths = {1, 3};
  grid.usefulness = {false, true};
  const auto gs = grid_search(train, grid, 3, 23, 4);
  REQUIRE(gs.table.size() == 16);
  for (const auto& row : gs.table) {
    const auto cv = cross_validate(train, row.params, 3, 23);
    CHECK(row.cv.fold_accuracies == cv.fold_accuracies);
  }
}

TEST_CASE("separable pair data needs depth 2 and the grid finds it") {
  GridSpec grid;
  grid.noise_counts = {0.5};
  grid.saturation_counts = {100.0};
  grid.max_depths = {1, 2};
  grid.usefulness = {false};
  const auto gs = grid_search(xor_data(), grid, 4, 7);
  CHECK(gs.best.max_depth == 2);
  CHECK(gs.best_cv.mean_accuracy == 1.0);
  // depth 1 cannot beat it
  for (const auto& row : gs.table) {
    if (row.params.max_depth == 1) CHECK(row.cv.mean_accuracy < 1.0);
    CHECK(gs.best_cv.mean_accuracy >= row.cv.mean_accuracy);
  }
}

TEST_CASE("results table is stable for a fixed seed") {
  std::mt19937_64 rng(193);
  st::SyntheticSpec spec;
  spec.n_features = 4;
  spec.n_instances = 32;
  const auto train = st::to_training_set(st::random_dataset(spec, rng));
  GridSpec grid;
  grid.noise_counts = {0.5, 1.0};
  grid.saturation_counts = {10.0};
  grid.max_depths = {1, 2};
  grid.usefulness = {false, true};
  const auto a = results_table_csv(grid_search(train, grid, 4, 29, 1));
  const auto b = results_table_csv(grid_search(train, grid, 4, 29, 8));
  CHECK(a == b);
  CHECK(a.find("n_err,n_max,max_depth,usefulness,fold1,fold2,fold3,fold4,mean") !=
        std::string::npos);
}

TEST_CASE("grid validation rejects empty or invalid lists") {
  GridSpec grid;
  grid.noise_counts.clear();
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
  GridSpec bad;
  bad.max_depths = {0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
