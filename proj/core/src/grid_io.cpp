#include "roughflow/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "roughflow/errors.hpp"

namespace roughflow {

static_assert(std::endian::native == std::endian::little,
              "grid i/o assumes a little-endian host");

void save_grid(const GridField3& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("save_grid: cannot open " + path);
  std::int64_t dims[3] = {g.nx, g.ny, g.nz};
  double meta[4] = {g.origin.x, g.origin.y, g.origin.z, g.spacing};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  out.write(reinterpret_cast<const char*>(meta), sizeof meta);
  out.write(reinterpret_cast<const char*>(g.samples.data()),
            std::streamsize(g.samples.size() * sizeof(double)));
  if (!out) throw NumericalError("save_grid: write failed for " + path);
}

GridField3 load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("load_grid: cannot open " + path);
  std::int64_t dims[3];
  double meta[4];
  in.read(reinterpret_cast<char*>(dims), sizeof dims);
  in.read(reinterpret_cast<char*>(meta), sizeof meta);
  if (!in) throw NumericalError("load_grid: truncated header in " + path);
  if (dims[0] < 2 || dims[1] < 2 || dims[2] < 2 || meta[3] <= 0)
    throw NumericalError("load_grid: invalid header in " + path);
  GridField3 g;
  g.nx = dims[0];
  g.ny = dims[1];
  g.nz = dims[2];
  g.origin = {meta[0], meta[1], meta[2]};
  g.spacing = meta[3];
  g.samples.resize(std::size_t(g.nx * g.ny * g.nz));
  in.read(reinterpret_cast<char*>(g.samples.data()),
          std::streamsize(g.samples.size() * sizeof(double)));
  if (!in) throw NumericalError("load_grid: truncated samples in " + path);
  return g;
}

}  // namespace roughflow
