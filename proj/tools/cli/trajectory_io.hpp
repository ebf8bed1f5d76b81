#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hahn/hahn_process.hpp"

namespace hahn::cli {

/// Run-length form of one path, e.g. "U2F1U1" for up, up, flat, up.
std::string encode_moves(const std::vector<Step>& moves);
std::vector<Step> decode_moves(const std::string& text);

/// Trajectory file: {"schema_version", "model", "seed", "trajectories": [[path strings]]}.
nlohmann::json trajectories_to_json(const ModelParams& model, std::uint64_t seed,
                                    const std::vector<PathFamily>& families);

/// Reads one family from a trajectory file; InputError on any malformed field
/// or a family that violates the path invariants.
PathFamily read_family(const std::string& path, long index);

/// Writes via a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace hahn::cli
