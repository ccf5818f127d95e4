#pragma once

#include "isentropy/contour_entropy.hpp"

#include <filesystem>

namespace isentropy {

// Binary PGM (P5), one pixel per cell, value = round(255 * min(E/maxBits, 1)).
// Image row 0 holds the max-y cell row. The field must be a single cell
// plane (nz = 1); slice 3D fields first.
void render_entropy_map(const EntropyField& field, const std::filesystem::path& out_path,
                        double max_bits);

} // namespace isentropy
