#pragma once

#include <string>

#include "roughflow/field.hpp"

namespace roughflow {

// Flat binary grid file, little-endian:
//   3 x int64    dims (nx, ny, nz)
//   3 x float64  origin
//   1 x float64  spacing
//   nx*ny*nz x float64  samples, row-major (x fastest)
void save_grid(const GridField3& g, const std::string& path);
GridField3 load_grid(const std::string& path);

}  // namespace roughflow
