#pragma once

#include <string>

#include "bzm/spectral/field.hpp"

namespace bzm {

/// Binary field file: "BZMF1", int32 d, int32 N, float64 period,
/// int32 components, uint32 endianness tag 0x01020304 (writer's byte order),
/// then float64 samples, component by component, row-major. All header and
/// sample values use the writer's byte order; readers swap when the tag says so.
void write_field(const std::string& path, const Field& f);

/// Throws Error(format_mismatch), Error(truncated_file) or Error(io_error).
Field read_field(const std::string& path);

/// Also checks the header against `grid` (dimension, N, period).
Field read_field(const std::string& path, const Grid& grid);

}  // namespace bzm
