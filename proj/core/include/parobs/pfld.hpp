#pragma once

#include <filesystem>

#include "parobs/field.hpp"

namespace parobs {

// PFLD binary field container:
//   magic "PFLD", version u32 = 1, u32 d,
//   d x u64 points-per-axis, d x f64 extents,
//   then size() interleaved f64 (Re, Im) pairs in row-major order.
// All integers and floats are little-endian regardless of host order.

void write_pfld(const std::filesystem::path& path, const Field& field);

/// Reads a PFLD file; the result is tagged as a physical-space field.
Field read_pfld(const std::filesystem::path& path);

}  // namespace parobs
