#include "seriescls/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace seriescls {

namespace {

using nlohmann::json;

json conditions_json(const ConditionSet& cs) {
  json arr = json::array();
  for (const auto& c : cs.conditions()) arr.push_back(json::array({c.feature, c.value}));
  return arr;
}

ConditionSet conditions_from_json(const json& arr) {
  std::vector<FeatureCondition> conds;
  conds.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::runtime_error("condition must be a [feature, value] pair");
    }
    conds.push_back({pair[0].get<std::int32_t>(), pair[1].get<std::int32_t>()});
  }
  return ConditionSet{std::move(conds)};
}

std::string impurity_name(ImpurityMeasure m) {
  return m == ImpurityMeasure::kGini ? "gini" : "entropy";
}

ImpurityMeasure impurity_from_name(const std::string& name) {
  if (name == "gini") return ImpurityMeasure::kGini;
  if (name == "entropy") return ImpurityMeasure::kEntropy;
  throw std::runtime_error("unknown impurity measure '" + name + "'");
}

}  // namespace

std::string serialize_model(const SeriesModel& model) {
  json doc;
  doc["format"] = "seriescls-model";
  doc["format_version"] = kModelFormatVersion;

  const auto& hp = model.params();
  doc["hyperparameters"] = {{"n_err", hp.noise_count},
                            {"n_max", hp.saturation_count},
                            {"max_depth", hp.max_depth},
                            {"branch_top_k", hp.branch_top_k},
                            {"use_usefulness", hp.use_usefulness},
                            {"impurity", impurity_name(hp.impurity)}};
  doc["class_labels"] = model.class_labels();
  doc["feature_names"] = model.metadata().feature_names;
  doc["missing_token"] = model.metadata().missing_token;
  doc["value_tokens"] = model.metadata().value_tokens;

  // canonical set order keeps repeated saves byte-identical
  std::vector<const ConditionSet*> keys;
  keys.reserve(model.stats_table().size());
  for (const auto& [cs, st] : model.stats_table()) keys.push_back(&cs);
  std::sort(keys.begin(), keys.end(),
            [](const ConditionSet* a, const ConditionSet* b) { return *a < *b; });

  json combos = json::array();
  for (const auto* cs : keys) {
    json entry;
    entry["conditions"] = conditions_json(*cs);
    entry["counts"] = model.find(*cs)->class_counts;
    combos.push_back(std::move(entry));
  }
  doc["combinations"] = std::move(combos);

  json children = json::array();
  for (const auto* cs : keys) {
    const auto kids = model.children_of(*cs);
    if (kids.empty()) continue;
    json entry;
    entry["conditions"] = conditions_json(*cs);
    json list = json::array();
    for (const auto& kid : kids) list.push_back(conditions_json(kid));
    entry["children"] = std::move(list);
    children.push_back(std::move(entry));
  }
  doc["children"] = std::move(children);

  return doc.dump(1, '\t') + "\n";
}

void save_model(const SeriesModel& model, std::ostream& out) {
  out << serialize_model(model);
}

void save_model(const SeriesModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  save_model(model, out);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

SeriesModel load_model(std::istream& in, const std::string& name) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(name + ": parse error: " + e.what());
  }

  try {
    if (!doc.is_object() || doc.value("format", "") != "seriescls-model") {
      throw std::runtime_error("not a seriescls model archive");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw std::runtime_error("unsupported format_version " + std::to_string(version));
    }

    const auto& hj = doc.at("hyperparameters");
    Hyperparameters hp;
    hp.noise_count = hj.at("n_err").get<double>();
    hp.saturation_count = hj.at("n_max").get<double>();
    hp.max_depth = hj.at("max_depth").get<int>();
    hp.branch_top_k = hj.at("branch_top_k").get<int>();
    hp.use_usefulness = hj.at("use_usefulness").get<bool>();
    hp.impurity = impurity_from_name(hj.at("impurity").get<std::string>());

    ModelMetadata metadata;
    metadata.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    metadata.missing_token = doc.at("missing_token").get<std::string>();
    metadata.value_tokens =
        doc.at("value_tokens").get<std::vector<std::vector<std::string>>>();

    SeriesModel::StatsTable stats;
    for (const auto& entry : doc.at("combinations")) {
      auto cs = conditions_from_json(entry.at("conditions"));
      auto counts = entry.at("counts").get<std::vector<std::int64_t>>();
      if (!stats.emplace(std::move(cs), CombinationStats::from_counts(std::move(counts)))
               .second) {
        throw std::runtime_error("duplicate combination entry");
      }
    }
    SeriesModel::ChildrenIndex children;
    for (const auto& entry : doc.at("children")) {
      auto cs = conditions_from_json(entry.at("conditions"));
      std::vector<ConditionSet> kids;
      for (const auto& kid : entry.at("children")) {
        kids.push_back(conditions_from_json(kid));
      }
      if (!children.emplace(std::move(cs), std::move(kids)).second) {
        throw std::runtime_error("duplicate children entry");
      }
    }

    return SeriesModel::assemble(hp, doc.at("class_labels").get<std::vector<std::string>>(),
                                 std::move(metadata), std::move(stats),
                                 std::move(children));
  } catch (const json::exception& e) {
    throw std::runtime_error(name + ": malformed model archive: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(name + ": model integrity check failed: " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

SeriesModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open model file");
  return load_model(in, path);
}

}  // namespace seriescls
