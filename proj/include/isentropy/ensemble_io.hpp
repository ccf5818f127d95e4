#pragma once

#include "isentropy/grid.hpp"

#include <filesystem>

namespace isentropy {

// Manifest format: UTF-8 JSON with fields
//   name    string
//   dims    [nx, ny, nz]
//   dtype   "f32"
//   order   "x-fastest"
//   members [relative file paths]
// Member files hold raw little-endian float32, x-fastest then y then z,
// exactly nx*ny*nz values each.
EnsembleField load_ensemble(const std::filesystem::path& manifest_path);

// Writes <stem>_m<i>.f32 member files next to the manifest.
void write_ensemble(const EnsembleField& field, const std::filesystem::path& manifest_path);

} // namespace isentropy
