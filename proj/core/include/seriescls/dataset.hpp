#ifndef SERIESCLS_DATASET_HPP
#define SERIESCLS_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seriescls/model.hpp"
#include "seriescls/trainer.hpp"

namespace seriescls {

struct CsvOptions {
  char delimiter = ',';
  bool has_header = false;
  // Column index ("0", "3", ...) or, with has_header, a column name.
  std::string label_column = "0";
  std::string missing_token = "?";
};

// Category encoding built while loading: dense codes per feature in
// first-seen order, labels encoded alphabetically so runs are reproducible.
struct DatasetSchema {
  std::vector<std::string> feature_names;              // from the header, else "x0".."xN"
  std::vector<std::vector<std::string>> value_tokens;  // per feature: code -> token
  std::vector<std::string> class_labels;               // sorted
  std::string missing_token = "?";
  int label_index = 0;  // column position in the source file

  ModelMetadata metadata() const {
    return ModelMetadata{feature_names, value_tokens, missing_token};
  }
};

struct LoadedDataset {
  TrainingSet train;
  DatasetSchema schema;
};

// Parses a categorical CSV. Ragged rows fail with the row number; a file
// with no data rows fails with "empty dataset".
LoadedDataset load_csv(const std::string& path, const CsvOptions& options = {});
LoadedDataset load_csv(std::istream& in, const CsvOptions& options,
                       const std::string& name_for_errors);

// Tokens for one encoded instance, missing_token where absent. Inverse of
// the loader's encoding.
std::vector<std::string> decode_instance(const DatasetSchema& schema,
                                         std::span<const std::int32_t> values);

struct FoldSplit {
  std::vector<std::int32_t> train_indices;
  std::vector<std::int32_t> test_indices;
};

// k disjoint stratified folds covering all instances; per-class proportions
// within one instance of proportional. Deterministic for a fixed seed. A
// class with fewer than k instances is an error naming the class, unless
// allow_small_classes lets it be dealt round-robin (some folds then lack it).
std::vector<FoldSplit> stratified_kfold(const TrainingSet& train, int k,
                                        std::uint64_t seed,
                                        bool allow_small_classes = false);

// The rows of `train` selected by `indices`, in order.
TrainingSet subset(const TrainingSet& train, std::span<const std::int32_t> indices);

}  // namespace seriescls

#endif  // SERIESCLS_DATASET_HPP
