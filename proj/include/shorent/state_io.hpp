#pragma once

#include <filesystem>
#include <string>

#include "shorent/state_vector.hpp"

namespace shorent {

/// JSON state file: {"num_qubits": L, "amplitudes": [[re, im], ...]}.
std::string state_to_json(const StateVector& state);

/// Throws std::invalid_argument on malformed input, a dimension that is not
/// 2^num_qubits, or a non-power-of-two amplitude count.
StateVector state_from_json(const std::string& text);

void write_state_file(const std::filesystem::path& path, const StateVector& state);
StateVector read_state_file(const std::filesystem::path& path);

}  // namespace shorent
