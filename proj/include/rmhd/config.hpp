#pragma once

#include <json.hpp>

#include "rmhd/double_waves.hpp"
#include "rmhd/simple_waves.hpp"
#include "rmhd/verify.hpp"

namespace rmhd {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds a solution from the config's "solution" node:
//   {"family": "...", "constants": {...}, "profiles": {...}}
SolutionPtr build_solution(const nlohmann::json& node);

GridSpec parse_grid(const nlohmann::json& node);

// Refinement level built from a grid node: axes marked "active" get
// n = n_active points; slab axes keep their point count but shrink their
// extent by 64/n_active, and "dt64" scales the same way, so every
// discretization length is proportional to 1/n_active.
GridSpec grid_at_level(const nlohmann::json& node, int n_active);

FluidModel model_of(const Solution& sol);

Vec3 parse_vec3(const nlohmann::json& node);

} // namespace rmhd
