#ifndef GAUSSPETZ_JSON_IO_HPP
#define GAUSSPETZ_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "gausspetz/channel.hpp"
#include "gausspetz/measures.hpp"
#include "gausspetz/state.hpp"

namespace gausspetz {

/// JSON interchange. States are {"modes": n, "mean": [...], "cov": [[...]]}
/// and channels {"X": [[...]], "Y": [[...]], "delta": [...]}; matrices are
/// row-major arrays of rows, xxpp quadrature ordering, IEEE doubles.

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Vector& v);
Matrix matrix_from_json(const nlohmann::json& j);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GaussianState& state);
GaussianState state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GaussianChannel& channel);
GaussianChannel channel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DeficitReport& report);

GaussianState load_state(const std::string& path);
GaussianChannel load_channel(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace gausspetz

#endif
