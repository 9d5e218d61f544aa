/// @file snapshot.hpp
/// @brief Binary field snapshot container.
///
/// Layout (all integers and reals little-endian):
///
///   offset  size  content
///   0       8     magic "NSLABFLD"
///   8       4     uint32 format version (1)
///   12      4     uint32 dimension (2 or 3)
///   16      4     uint32 points_per_axis
///   20      4     uint32 component count (1..3)
///   24      8     float64 period
///   32      ...   component-major float64 samples, each component in the
///                 grid's row-major flat order (first axis slowest)
#pragma once

#include <filesystem>
#include <iosfwd>

#include "nslab/field.hpp"

namespace nslab {

void write_snapshot(std::ostream& out, const PhysicalField& field);
PhysicalField read_snapshot(std::istream& in);

void write_snapshot(const std::filesystem::path& path, const PhysicalField& field);
PhysicalField read_snapshot(const std::filesystem::path& path);

} // namespace nslab
