#include "seriescls/explain.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace seriescls {

namespace {

constexpr double kDisplayThreshold = 1e-4;

void check_class(const PredictionResult& result, int class_index) {
  if (class_index < 0 || class_index >= static_cast<int>(result.per_class.size())) {
    throw std::invalid_argument("explain: class index out of range");
  }
}

std::unordered_map<ConditionSet, std::int32_t, ConditionSetHash> node_index_of(
    const PredictionResult& result) {
  std::unordered_map<ConditionSet, std::int32_t, ConditionSetHash> index;
  index.reserve(result.nodes.size());
  for (std::size_t i = 0; i < result.nodes.size(); ++i) {
    index.emplace(result.nodes[i], static_cast<std::int32_t>(i));
  }
  return index;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string percent(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, v * 100.0);
  return buf;
}

std::string code_form(const ConditionSet& cs) {
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs.conditions()) {
    if (!out.empty()) out += ";";
    out += "x" + std::to_string(c.feature) + "=" + std::to_string(c.value);
  }
  return out;
}

std::string joined_counts(std::span<const std::int64_t> counts) {
  std::string out;
  for (const auto c : counts) {
    if (!out.empty()) out += ",";
    out += std::to_string(c);
  }
  return out;
}

void append_row(std::ostringstream& os, std::span<const std::string> cells,
                std::span<const std::size_t> widths) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i == 0) {
      os << std::left << std::setw(static_cast<int>(widths[i])) << cells[i];
    } else {
      os << "  " << std::right << std::setw(static_cast<int>(widths[i])) << cells[i];
    }
  }
  os << '\n';
}

std::string render_table(std::vector<std::vector<std::string>> rows) {
  if (rows.empty()) return {};
  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::ostringstream os;
  append_row(os, rows[0], widths);
  {
    std::vector<std::string> rule;
    for (const auto w : widths) rule.emplace_back(w, '-');
    append_row(os, rule, widths);
  }
  for (std::size_t r = 1; r < rows.size(); ++r) append_row(os, rows[r], widths);
  return os.str();
}

}  // namespace

std::vector<CombinationContribution> attribute_combinations(
    const PredictionResult& result, int class_index) {
  check_class(result, class_index);
  const auto& trace = result.per_class[class_index];
  const auto index = node_index_of(result);

  // Nodes are in breadth-first depth order, so every child sits after its
  // parents; one forward sweep pushes each node's mass down and deposits the
  // share its own measured value kept.
  std::vector<double> mass(trace.size(), 0.0);
  std::vector<double> deposited(trace.size(), 0.0);
  mass[0] = 1.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& node = trace[i];
    deposited[i] += mass[i] * node.self_weight;
    for (const auto& term : node.child_terms) {
      mass[index.at(term.child)] += mass[i] * term.weight;
    }
  }

  std::vector<CombinationContribution> out;
  out.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (deposited[i] == 0.0) continue;  // kept no share of the estimate
    CombinationContribution c;
    c.condition_set = result.nodes[i];
    c.class_counts = result.node_counts[i];
    c.p_measured = trace[i].p_measured;
    c.cumulative_weight = deposited[i];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.cumulative_weight != b.cumulative_weight) {
      return a.cumulative_weight > b.cumulative_weight;
    }
    return a.condition_set < b.condition_set;
  });
  return out;
}

std::vector<FeatureContribution> attribute_features(const PredictionResult& result,
                                                    int class_index) {
  check_class(result, class_index);
  const auto& trace = result.per_class[class_index];
  const auto index = node_index_of(result);

  std::vector<FeatureContribution> out;
  out.reserve(trace[0].child_terms.size());
  for (const auto& term : trace[0].child_terms) {
    FeatureContribution f;
    f.condition = term.child.conditions().front();
    f.p_refined = trace[index.at(term.child)].p_refined;
    f.weight = term.weight;
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.condition < b.condition;
  });
  return out;
}

double root_fallback_weight(const PredictionResult& result, int class_index) {
  check_class(result, class_index);
  return result.per_class[class_index][0].self_weight;
}

std::string render_combination_report(const SeriesModel& model,
                                      std::span<const CombinationContribution> contributions,
                                      const PredictionResult& result, int class_index,
                                      int top_n) {
  check_class(result, class_index);
  if (top_n < 0) throw std::invalid_argument("render: top_n must be >= 0");
  const auto& labels = result.class_labels;

  std::vector<std::vector<std::string>> rows;
  {
    std::vector<std::string> head{"Combination"};
    for (const auto& l : labels) head.push_back("Counts " + l);
    head.push_back("P(" + labels[class_index] + ")");
    head.push_back("Weight");
    head.push_back("Cum.weight");
    rows.push_back(std::move(head));
  }

  double shown = 0.0;
  double other = 0.0;
  int used = 0;
  for (const auto& c : contributions) {
    if (used >= top_n || c.cumulative_weight < kDisplayThreshold) {
      other += c.cumulative_weight;
      continue;
    }
    ++used;
    shown += c.cumulative_weight;
    std::vector<std::string> row{model.describe_set(c.condition_set)};
    for (const auto cnt : c.class_counts) row.push_back(std::to_string(cnt));
    row.push_back(percent(c.p_measured, 1));
    row.push_back(percent(c.cumulative_weight, 2));
    row.push_back(percent(shown, 2));
    rows.push_back(std::move(row));
  }
  if (other > 0.0) {
    std::vector<std::string> row{"(other)"};
    for (std::size_t i = 0; i < labels.size(); ++i) row.emplace_back("-");
    row.emplace_back("-");
    row.push_back(percent(other, 2));
    row.push_back(percent(shown + other, 2));
    rows.push_back(std::move(row));
  }
  return render_table(std::move(rows));
}

std::string render_feature_report(const SeriesModel& model,
                                  std::span<const FeatureContribution> features,
                                  const PredictionResult& result, int class_index,
                                  int top_n) {
  check_class(result, class_index);
  if (top_n < 0) throw std::invalid_argument("render: top_n must be >= 0");
  const auto& labels = result.class_labels;

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Feature", "P'(" + labels[class_index] + ")", "Weight"});

  double other = 0.0;
  int used = 0;
  for (const auto& f : features) {
    if (used >= top_n || f.weight < kDisplayThreshold) {
      other += f.weight;
      continue;
    }
    ++used;
    rows.push_back({model.describe_condition(f.condition), percent(f.p_refined, 1),
                    percent(f.weight, 2)});
  }
  if (other > 0.0) {
    rows.push_back({"(other)", "-", percent(other, 2)});
  }
  rows.push_back({"(base rate fallback)", "-",
                  percent(root_fallback_weight(result, class_index), 2)});
  return render_table(std::move(rows));
}

std::string render_combination_records(const SeriesModel& model,
                                       std::span<const CombinationContribution> contributions,
                                       int top_n) {
  if (top_n < 0) throw std::invalid_argument("render: top_n must be >= 0");
  (void)model;
  std::ostringstream os;
  double shown = 0.0;
  int used = 0;
  for (const auto& c : contributions) {
    if (used >= top_n) break;
    ++used;
    shown += c.cumulative_weight;
    os << "combination conditions=" << code_form(c.condition_set)
       << " counts=" << joined_counts(c.class_counts)
       << " p_measured=" << format_real(c.p_measured)
       << " weight=" << format_real(c.cumulative_weight)
       << " cum_weight=" << format_real(shown) << '\n';
  }
  return os.str();
}

std::string render_feature_records(const SeriesModel& model,
                                   std::span<const FeatureContribution> features,
                                   int top_n) {
  if (top_n < 0) throw std::invalid_argument("render: top_n must be >= 0");
  (void)model;
  std::ostringstream os;
  int used = 0;
  for (const auto& f : features) {
    if (used >= top_n) break;
    ++used;
    os << "feature condition=x" << f.condition.feature << "=" << f.condition.value
       << " p_refined=" << format_real(f.p_refined)
       << " weight=" << format_real(f.weight) << '\n';
  }
  return os.str();
}

}  // namespace seriescls
