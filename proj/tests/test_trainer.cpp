#include <map>
#include <random>
#include <set>

#include <doctest.h>

#include "seriescls/kernels.hpp"
#include "seriescls/model_io.hpp"
#include "seriescls/trainer.hpp"
#include "support/synthetic.hpp"

using namespace seriescls;
namespace st = seriescls::testing;

namespace {

// {(x0=0,A),(x0=0,B),(x0=1,A)}
TrainingSet toy3() {
  TrainingSet t;
  t.feature_count = 1;
  t.class_labels = {"A", "B"};
  t.instances = {{0}, {0}, {1}};
  t.labels = {0, 1, 0};
  return t;
}

ConditionSet cs(std::vector<FeatureCondition> conds) {
  return ConditionSet{std::move(conds)};
}

}  // namespace

TEST_CASE("count_combination by hand") {
  const auto t = toy3();
  const auto empty = count_combination(t, ConditionSet{});
  CHECK(empty.n_train == 3);
  CHECK(empty.class_counts == std::vector<std::int64_t>{2, 1});

  const auto x00 = count_combination(t, cs({{0, 0}}));
  CHECK(x00.class_counts == std::vector<std::int64_t>{1, 1});

  const auto none = count_combination(t, cs({{0, 7}}));
  CHECK(none.n_train == 0);
}

TEST_CASE("count_combination skips instances missing a conditioned feature") {
  TrainingSet t;
  t.feature_count = 2;
  t.class_labels = {"A", "B"};
  t.instances = {{0, kMissingValue}, {0, 1}, {kMissingValue, 1}};
  t.labels = {0, 1, 0};
  CHECK(count_combination(t, cs({{1, 1}})).n_train == 2);
  CHECK(count_combination(t, cs({{0, 0}, {1, 1}})).n_train == 1);
}

TEST_CASE("enumerate_children on the toy set") {
  const auto t = toy3();
  const auto kids = enumerate_children(t, ConditionSet{}, 2);
  REQUIRE(kids.size() == 2);
  CHECK(kids[0].first == cs({{0, 0}}));
  CHECK(kids[0].second.class_counts == std::vector<std::int64_t>{1, 1});
  CHECK(kids[1].first == cs({{0, 1}}));
  CHECK(kids[1].second.class_counts == std::vector<std::int64_t>{1, 0});

  CHECK_THROWS_WITH_AS(enumerate_children(t, cs({{0, 0}}), 1),
                       doctest::Contains("max depth"), std::invalid_argument);
}

TEST_CASE("enumerate_children covers every observed value pair") {
  std::mt19937_64 rng(31);
  st::SyntheticSpec spec;
  spec.n_features = 16;
  spec.n_values = 2;
  spec.n_instances = 60;
  const auto data = st::random_dataset(spec, rng);
  const auto train = st::to_training_set(data);
  const auto kids = enumerate_children(train, ConditionSet{}, 4);
  CHECK(kids.size() <= 32);  // 16 binary features
  std::set<std::pair<int, int>> observed;
  for (const auto& row : data.instances) {
    for (int f = 0; f < 16; ++f) observed.insert({f, row[f]});
  }
  CHECK(kids.size() == observed.size());
}

TEST_CASE("select_top_children ranking and tie-breaks") {
  std::vector<std::pair<ConditionSet, CombinationStats>> kids;
  kids.emplace_back(cs({{0, 0}}), CombinationStats::from_counts({16, 0}));
  kids.emplace_back(cs({{1, 0}}), CombinationStats::from_counts({47, 0}));
  kids.emplace_back(cs({{2, 0}}), CombinationStats::from_counts({5, 5}));
  kids.emplace_back(cs({{3, 0}}), CombinationStats::from_counts({9, 1}));

  SUBCASE("pure nodes first, larger backing breaks the tie") {
    const auto top = select_top_children(kids, 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0] == cs({{1, 0}}));
  }
  SUBCASE("k larger than the list returns everything, ranked") {
    const auto top = select_top_children(kids, 6);
    REQUIRE(top.size() == 4);
    CHECK(top[0] == cs({{1, 0}}));
    CHECK(top[1] == cs({{0, 0}}));
    CHECK(top[2] == cs({{3, 0}}));
    CHECK(top[3] == cs({{2, 0}}));
  }
  SUBCASE("zero-count children are dropped") {
    kids.emplace_back(cs({{4, 0}}), CombinationStats::from_counts({0, 0}));
    CHECK(select_top_children(kids, 10).size() == 4);
  }
  SUBCASE("identical impurity and backing fall back to canonical order") {
    std::vector<std::pair<ConditionSet, CombinationStats>> twins;
    twins.emplace_back(cs({{5, 1}}), CombinationStats::from_counts({3, 0}));
    twins.emplace_back(cs({{2, 1}}), CombinationStats::from_counts({3, 0}));
    const auto top = select_top_children(twins, 2);
    CHECK(top[0] == cs({{2, 1}}));
  }
}

TEST_CASE("build_model rejects degenerate inputs") {
  TrainingSet empty;
  empty.feature_count = 1;
  empty.class_labels = {"A", "B"};
  CHECK_THROWS_WITH_AS(build_model(empty, Hyperparameters{}),
                       doctest::Contains("empty"), std::invalid_argument);

  TrainingSet single;
  single.feature_count = 1;
  single.class_labels = {"A", "B"};
  single.instances = {{0}, {1}};
  single.labels = {0, 0};
  CHECK_THROWS_WITH_AS(build_model(single, Hyperparameters{}),
                       doctest::Contains("degenerate labels"), std::invalid_argument);
}

TEST_CASE("max_depth 1 keeps only the base rate and single conditions") {
  std::mt19937_64 rng(37);
  const auto data = st::random_dataset(st::SyntheticSpec{}, rng);
  Hyperparameters hp;
  hp.max_depth = 1;
  const auto model = build_model(st::to_training_set(data), hp);
  for (const auto& [set, stats] : model.stats_table()) {
    CHECK(set.size() <= 1);
  }
  CHECK(model.combinations_per_depth()[0] == 1);
}

TEST_CASE("depths 1 and 2 are exhaustive and counted exactly") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 25; ++round) {
    st::SyntheticSpec spec;
    spec.n_features = 2 + static_cast<int>(rng() % 5);  // up to 6
    spec.n_values = 2 + static_cast<int>(rng() % 2);
    spec.n_classes = 2;
    spec.n_instances = 10 + static_cast<int>(rng() % 20);
    spec.missing_rate = (round % 3 == 0) ? 0.2 : 0.0;
    const auto data = st::random_dataset(spec, rng);
    const auto train = st::to_training_set(data);
    Hyperparameters hp;
    hp.max_depth = 2;
    const auto model = build_model(train, hp);

    // brute-force every size-1 and size-2 combination
    std::map<std::vector<int>, std::vector<std::int64_t>> expected;
    for (std::size_t i = 0; i < data.instances.size(); ++i) {
      const auto& row = data.instances[i];
      for (int f = 0; f < spec.n_features; ++f) {
        if (row[f] == st::kOracleMissing) continue;
        auto& c1 = expected[{f, row[f]}];
        c1.resize(2, 0);
        c1[data.labels[i]] += 1;
        for (int g = f + 1; g < spec.n_features; ++g) {
          if (row[g] == st::kOracleMissing) continue;
          auto& c2 = expected[{f, row[f], g, row[g]}];
          c2.resize(2, 0);
          c2[data.labels[i]] += 1;
        }
      }
    }
    std::size_t found = 0;
    for (const auto& [key, counts] : expected) {
      std::vector<FeatureCondition> conds;
      for (std::size_t i = 0; i < key.size(); i += 2) {
        conds.push_back({key[i], key[i + 1]});
      }
      const auto* stats = model.find(ConditionSet{std::move(conds)});
      REQUIRE(stats != nullptr);
      CHECK(stats->class_counts == counts);
      ++found;
    }
    CHECK(found + 1 == model.combination_count());  // plus the base rate
  }
}

TEST_CASE("children partition the parent among non-missing extensions") {
  std::mt19937_64 rng(43);
  st::SyntheticSpec spec;
  spec.n_features = 4;
  spec.n_values = 3;
  spec.n_instances = 30;
  spec.missing_rate = 0.2;
  const auto data = st::random_dataset(spec, rng);
  const auto train = st::to_training_set(data);
  const auto parent = cs({{1, 0}});
  const auto parent_stats = count_combination(train, parent);
  for (int k = 0; k < 4; ++k) {
    if (k == 1) continue;
    std::vector<std::int64_t> sum(2, 0);
    for (int v = 0; v < 3; ++v) {
      const auto child = count_combination(train, parent.extended_with({k, v}));
      for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += child.class_counts[c];
    }
    // instances with feature k missing match the parent but no child
    std::vector<std::int64_t> missing_k(2, 0);
    for (std::size_t i = 0; i < train.instances.size(); ++i) {
      if (train.instances[i][1] == 0 && train.instances[i][k] == kMissingValue) {
        missing_k[train.labels[i]] += 1;
      }
    }
    for (std::size_t c = 0; c < sum.size(); ++c) {
      CHECK(sum[c] + missing_k[c] == parent_stats.class_counts[c]);
    }
  }
}

TEST_CASE("pruned levels keep at most branch_top_k children per combination") {
  std::mt19937_64 rng(47);
  st::SyntheticSpec spec;
  spec.n_features = 6;
  spec.n_values = 2;
  spec.n_instances = 40;
  const auto train = st::to_training_set(st::random_dataset(spec, rng));
  Hyperparameters hp;
  hp.max_depth = 4;
  hp.branch_top_k = 3;
  const auto model = build_model(train, hp);
  bool saw_deep = false;
  for (const auto& [set, kids] : model.children_index()) {
    if (set.size() >= 2) {
      CHECK(kids.size() <= 3);
      if (!kids.empty()) saw_deep = true;
    }
    for (const auto& kid : kids) {
      CHECK(model.find(kid) != nullptr);
      CHECK(model.find(kid)->n_train <= model.find(set)->n_train);
    }
  }
  CHECK(saw_deep);
}

TEST_CASE("build_model is deterministic") {
  std::mt19937_64 rng(53);
  st::SyntheticSpec spec;
  spec.n_features = 5;
  spec.n_values = 3;
  spec.n_instances = 25;
  spec.missing_rate = 0.1;
  const auto train = st::to_training_set(st::random_dataset(spec, rng));
  Hyperparameters hp;
  hp.max_depth = 3;
  hp.branch_top_k = 2;
  const auto a = serialize_model(build_model(train, hp));
  const auto b = serialize_model(build_model(train, hp));
  CHECK(a == b);
}

TEST_CASE("every retained child is backed by no more data than its parents") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 10; ++round) {
    const auto spec = st::random_small_spec(rng);
    const auto train = st::to_training_set(st::random_dataset(spec, rng));
    Hyperparameters hp;
    hp.max_depth = std::min(4, spec.n_features);
    const auto model = build_model(train, hp);
    for (const auto& [set, stats] : model.stats_table()) {
      if (set.empty()) continue;
      for (std::size_t skip = 0; skip < set.size(); ++skip) {
        std::vector<FeatureCondition> sub;
        for (std::size_t i = 0; i < set.size(); ++i) {
          if (i != skip) sub.push_back(set.conditions()[i]);
        }
        const auto* parent = model.find(ConditionSet{std::move(sub)});
        if (parent != nullptr) CHECK(stats.n_train <= parent->n_train);
      }
    }
  }
}
