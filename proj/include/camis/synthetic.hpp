#pragma once

#include <cstdint>

#include "camis/elevation.hpp"

namespace camis::synthetic {

/// Raster extent shared by the generators: n_cols x n_rows cells of `cell` meters
/// with the lower-left corner at the origin.
struct RasterShape {
  std::size_t n_cols = 101;
  std::size_t n_rows = 101;
  double cell = 0.1;
};

ElevationGrid flat(const RasterShape& shape, double elevation = 0.0);

/// Plane rising with the given steepness (degrees) toward the heading
/// `uphill_deg`, measured counter-clockwise from +x.
ElevationGrid ramp(const RasterShape& shape, double steepness_deg, double uphill_deg = 90.0);

/// Gaussian bumps: `count` hills or craters with amplitude in
/// [0.3, 1] * max_amplitude and width sigma in [sigma_min, sigma_max] * min(width, height).
struct HillsParams {
  int count = 6;
  double max_amplitude = 1.0;
  double sigma_min = 0.08;
  double sigma_max = 0.2;
};

/// Sum of Gaussian hills and craters with seeded random centres, widths and amplitudes.
ElevationGrid hills(const RasterShape& shape, std::uint64_t seed, const HillsParams& params = {});

/// Two flat levels joined by a planar slope band along y:
/// z = 0 for y < y0, rises at `steepness_deg` until y1, then stays flat.
ElevationGrid two_level(const RasterShape& shape, double y0, double y1, double steepness_deg);

/// Flat apron for y < y0 and a uniform slope rising in +y above it.
ElevationGrid apron_slope(const RasterShape& shape, double y0, double steepness_deg);

}  // namespace camis::synthetic
