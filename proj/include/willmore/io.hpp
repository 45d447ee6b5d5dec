#pragma once

// JSON file formats for conformal factors and immersions.
//
// Field file:     {"lattice": {"x", "y", "scale"}, "grid": [n1, n2], "u": [...]}
// Immersion file: {"kind": "conformal_grid", "lattice": ..., "grid": [n1, n2],
//                  "F": [[...], ...]}  or  {"kind": "revolution", "R": ..., "r": ...}
//
// Sample arrays are row-major in (i, j). Readers reject non-finite values and
// throw std::runtime_error with a description of the problem.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "willmore/fields.hpp"
#include "willmore/immersions.hpp"

namespace willmore::io {

nlohmann::json field_to_json(const ScalarField& u);
ScalarField field_from_json(const nlohmann::json& j);

nlohmann::json immersion_to_json(const ImmersedTorus& t);
ImmersedTorus immersion_from_json(const nlohmann::json& j);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

void write_field_file(const std::filesystem::path& path, const ScalarField& u);
ScalarField read_field_file(const std::filesystem::path& path);

void write_immersion_file(const std::filesystem::path& path, const ImmersedTorus& t);
ImmersedTorus read_immersion_file(const std::filesystem::path& path);

}  // namespace willmore::io
