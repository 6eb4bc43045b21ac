#pragma once

#include <filesystem>
#include <span>

#include "magmap/grid.hpp"

namespace magmap {

/**
 * Binary volume format (all little-endian):
 *
 *   bytes 0..3   magic "MGF1"
 *   bytes 4..7   uint32 voxels per axis
 *   bytes 8..15  float64 spacing in metres
 *   then n^3 float64 values, z fastest
 *
 * Extended (doubled) fields use the same layout with the doubled axis count
 * and the base spacing.
 */
inline constexpr char kFieldMagic[4] = {'M', 'G', 'F', '1'};

void write_field(const std::filesystem::path& path, const ScalarField& f);
void write_field(const std::filesystem::path& path, const ExtendedField& f);
ScalarField read_field(const std::filesystem::path& path);

} // namespace magmap
