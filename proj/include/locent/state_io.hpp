#pragma once

// State files: {"n": <qubits>, "re": [2^n reals], "im": [2^n reals]} in
// amplitude index order (qubit 1 most significant). Extra keys are ignored.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "locent/qstate.hpp"

namespace locent {

/// Amplitudes whose norm is within 1e-6 of one are renormalized; anything else is an InputError.
PureState state_from_json(const nlohmann::json& doc);
nlohmann::json state_to_json(const PureState& state);

PureState load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const PureState& state);

}  // namespace locent
