#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace camis {

/// Square raster of elevations. Row 0 is the top (northernmost) row, as in
/// ESRI ASCII grids; (origin_x, origin_y) is the lower-left corner of the
/// lower-left cell.
struct ElevationGrid {
  std::size_t n_cols = 0;
  std::size_t n_rows = 0;
  double cell_size = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double nodata = -9999.0;
  std::vector<double> values;  // row-major, top row first

  double at(std::size_t row, std::size_t col) const { return values[row * n_cols + col]; }
  double& at(std::size_t row, std::size_t col) { return values[row * n_cols + col]; }
  bool is_nodata(std::size_t row, std::size_t col) const { return at(row, col) == nodata; }

  // World coordinates of a cell centre.
  double cell_center_x(std::size_t col) const { return origin_x + (static_cast<double>(col) + 0.5) * cell_size; }
  double cell_center_y(std::size_t row) const {
    return origin_y + (static_cast<double>(n_rows - row) - 0.5) * cell_size;
  }

  /// Throws DataError when an invariant does not hold.
  void validate() const;
};

enum class ElevationFormat { AsciiGrid, Csv };

ElevationFormat parse_elevation_format(const std::string& name);

ElevationGrid load_elevation(const std::filesystem::path& path, ElevationFormat format);

ElevationGrid parse_ascii_grid(const std::string& text);
ElevationGrid parse_xyz_csv(const std::string& text);

/// Writes an ESRI ASCII grid. Numbers use shortest round-trip formatting, so
/// parse_ascii_grid(to_ascii_grid(g)) reproduces g exactly.
std::string to_ascii_grid(const ElevationGrid& grid);
void write_ascii_grid(const ElevationGrid& grid, const std::filesystem::path& path);

/// Box-filter average over a (2r+1)x(2r+1) window, ignoring nodata cells.
/// Windows containing only nodata keep nodata.
ElevationGrid smooth(const ElevationGrid& grid, int window_radius);

}  // namespace camis
