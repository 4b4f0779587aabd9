#include "support/synthetic.hpp"

#include <set>
#include <string>

namespace seriescls::testing {

RawData random_dataset(const SyntheticSpec& spec, std::mt19937_64& rng) {
  RawData data;
  data.n_features = spec.n_features;
  data.n_classes = spec.n_classes;
  for (;;) {
    data.instances.clear();
    data.labels.clear();
    for (int i = 0; i < spec.n_instances; ++i) {
      std::vector<int> values(spec.n_features);
      for (int f = 0; f < spec.n_features; ++f) {
        const bool missing =
            spec.missing_rate > 0.0 &&
            static_cast<double>(rng() % 1000) / 1000.0 < spec.missing_rate;
        values[f] = missing ? kOracleMissing : static_cast<int>(rng() % spec.n_values);
      }
      data.instances.push_back(std::move(values));
      data.labels.push_back(static_cast<int>(rng() % spec.n_classes));
    }
    std::set<int> distinct(data.labels.begin(), data.labels.end());
    if (distinct.size() >= 2) return data;
  }
}

SyntheticSpec random_small_spec(std::mt19937_64& rng) {
  SyntheticSpec spec;
  spec.n_features = 1 + static_cast<int>(rng() % 4);   // 1..4
  spec.n_values = 2 + static_cast<int>(rng() % 2);     // 2..3
  spec.n_classes = 2 + static_cast<int>(rng() % 2);    // 2..3
  spec.n_instances = 4 + static_cast<int>(rng() % 27); // 4..30
  spec.missing_rate = (rng() % 3 == 0) ? 0.15 : 0.0;
  return spec;
}

std::vector<int> random_instance(const SyntheticSpec& spec, double missing_rate,
                                 std::mt19937_64& rng) {
  std::vector<int> values(spec.n_features);
  for (int f = 0; f < spec.n_features; ++f) {
    const bool missing =
        missing_rate > 0.0 && static_cast<double>(rng() % 1000) / 1000.0 < missing_rate;
    values[f] = missing ? kOracleMissing : static_cast<int>(rng() % spec.n_values);
  }
  return values;
}

TrainingSet to_training_set(const RawData& data) {
  TrainingSet train;
  train.feature_count = data.n_features;
  for (int c = 0; c < data.n_classes; ++c) {
    train.class_labels.push_back("c" + std::to_string(c));
  }
  train.instances.reserve(data.instances.size());
  for (const auto& values : data.instances) {
    std::vector<std::int32_t> row(values.begin(), values.end());
    train.instances.push_back(std::move(row));
  }
  train.labels.assign(data.labels.begin(), data.labels.end());
  return train;
}

}  // namespace seriescls::testing
