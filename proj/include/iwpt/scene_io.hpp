#pragma once

#include <string>

#include "iwpt/scene.hpp"

namespace iwpt {

/**
 * Loads a scene from a JSON config. Lengths are meters, frequency Hz and
 * powers dBm; noise is given either directly (noise_power_dbm) or as a
 * density plus bandwidth (noise_density_dbm_per_hz, bandwidth_hz).
 * Throws std::runtime_error with the offending key on malformed input.
 */
Scene load_scene(const std::string& path);

/** Writes a scene back out in the same format (powers converted to dBm). */
void save_scene(const std::string& path, const Scene& s);

}  // namespace iwpt
