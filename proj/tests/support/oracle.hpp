#ifndef SERIESCLS_TESTS_ORACLE_HPP
#define SERIESCLS_TESTS_ORACLE_HPP

// Independent reference evaluator for the series formulas. Works straight
// off the raw instances: recounts every combination on demand, recurses over
// extensions without tables, pruning or memoization. Kept deliberately
// separate from the library so the two can only agree by computing the same
// math.

#include <cstdint>
#include <vector>

namespace seriescls::testing {

inline constexpr int kOracleMissing = -1;

struct RawData {
  std::vector<std::vector<int>> instances;
  std::vector<int> labels;
  int n_features = 0;
  int n_classes = 0;
};

struct OracleParams {
  double n_err = 1.0;
  double n_max = 100.0;
  bool use_usefulness = false;
  int max_depth = 4;
};

// Refined probability of class `cls` for instance `x`, starting from the
// unconditioned base rate.
double oracle_estimate(const RawData& data, const std::vector<int>& x, int cls,
                       const OracleParams& params);

// All per-class estimates.
std::vector<double> oracle_estimates(const RawData& data, const std::vector<int>& x,
                                     const OracleParams& params);

}  // namespace seriescls::testing

#endif  // SERIESCLS_TESTS_ORACLE_HPP
