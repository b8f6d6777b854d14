#pragma once

#include "speclab/grid.hpp"

#include <string>

namespace speclab {

// Flat binary container: "SLF1", int32 dim, int32 N, float64 L,
// then N^dim little-endian complex64 (float32 re, float32 im) pairs.
void write_field_binary(const Field& f, const std::string& path);
Field read_field_binary(const std::string& path);

// 1D CSV dump with header row: x, re, im.
void write_field_csv(const Field& f, const std::string& path);

}  // namespace speclab
