#include "camis/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "camis/cost_model.hpp"

namespace camis::synthetic {

namespace {

template <typename F>
ElevationGrid generate(const RasterShape& shape, F&& z) {
  ElevationGrid g;
  g.n_cols = shape.n_cols;
  g.n_rows = shape.n_rows;
  g.cell_size = shape.cell;
  g.values.resize(shape.n_cols * shape.n_rows);
  for (std::size_t r = 0; r < g.n_rows; ++r) {
    for (std::size_t c = 0; c < g.n_cols; ++c) g.at(r, c) = z(g.cell_center_x(c), g.cell_center_y(r));
  }
  return g;
}

}  // namespace

ElevationGrid flat(const RasterShape& shape, double elevation) {
  return generate(shape, [elevation](double, double) { return elevation; });
}

ElevationGrid ramp(const RasterShape& shape, double steepness_deg, double uphill_deg) {
  const double t = std::tan(deg2rad(steepness_deg));
  const double ux = std::cos(deg2rad(uphill_deg));
  const double uy = std::sin(deg2rad(uphill_deg));
  return generate(shape, [=](double x, double y) { return t * (ux * x + uy * y); });
}

ElevationGrid hills(const RasterShape& shape, std::uint64_t seed, const HillsParams& params) {
  struct Bump {
    double x, y, sigma, amplitude;
  };
  const double width = static_cast<double>(shape.n_cols) * shape.cell;
  const double height = static_cast<double>(shape.n_rows) * shape.cell;
  const double span = std::min(width, height);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Bump> bumps;
  for (int k = 0; k < params.count; ++k) {
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    const double x = unit(rng) * width;
    const double y = unit(rng) * height;
    const double sigma = span * (params.sigma_min + (params.sigma_max - params.sigma_min) * unit(rng));
    bumps.push_back({x, y, sigma, sign * params.max_amplitude * (0.3 + 0.7 * unit(rng))});
  }
  return generate(shape, [&bumps](double x, double y) {
    double z = 0.0;
    for (const Bump& b : bumps) {
      const double r2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
      z += b.amplitude * std::exp(-0.5 * r2 / (b.sigma * b.sigma));
    }
    return z;
  });
}

ElevationGrid two_level(const RasterShape& shape, double y0, double y1, double steepness_deg) {
  const double t = std::tan(deg2rad(steepness_deg));
  return generate(shape, [=](double, double y) { return t * (std::clamp(y, y0, y1) - y0); });
}

ElevationGrid apron_slope(const RasterShape& shape, double y0, double steepness_deg) {
  const double t = std::tan(deg2rad(steepness_deg));
  return generate(shape, [=](double, double y) { return t * std::max(0.0, y - y0); });
}

}  // namespace camis::synthetic
