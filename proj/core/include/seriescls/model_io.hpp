#ifndef SERIESCLS_MODEL_IO_HPP
#define SERIESCLS_MODEL_IO_HPP

#include <iosfwd>
#include <string>

#include "seriescls/model.hpp"

namespace seriescls {

// Version written by save_model; load_model rejects anything newer.
inline constexpr int kModelFormatVersion = 1;

// Serializes the model as an indented JSON document with canonically sorted
// combinations, so saving the same model twice is byte-identical and the
// file stays readable by humans. Counts are exact integers; real
// hyperparameters round-trip at full precision.
void save_model(const SeriesModel& model, const std::string& path);
void save_model(const SeriesModel& model, std::ostream& out);
std::string serialize_model(const SeriesModel& model);

// Parses and re-validates every model invariant; malformed documents fail
// with location context, inconsistent counts fail as integrity errors.
SeriesModel load_model(const std::string& path);
SeriesModel load_model(std::istream& in, const std::string& name_for_errors);

}  // namespace seriescls

#endif  // SERIESCLS_MODEL_IO_HPP
