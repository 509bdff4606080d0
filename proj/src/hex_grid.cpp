#include "camis/hex_grid.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "camis/errors.hpp"

namespace camis {

namespace {
constexpr double kHalfSqrt3 = 0.86602540378443864676;
}

Vec2 hex_position(HexIndex idx, double h) {
  return {h * idx.i + 0.5 * h * idx.j, h * kHalfSqrt3 * idx.j};
}

std::array<HexIndex, 6> neighborhood(HexIndex idx) {
  const int i = idx.i;
  const int j = idx.j;
  return {HexIndex{i + 1, j}, HexIndex{i, j + 1}, HexIndex{i - 1, j + 1},
          HexIndex{i - 1, j}, HexIndex{i, j - 1}, HexIndex{i + 1, j - 1}};
}

int hex_distance(HexIndex a, HexIndex b) {
  const int di = a.i - b.i;
  const int dj = a.j - b.j;
  return (std::abs(di) + std::abs(dj) + std::abs(di + dj)) / 2;
}

HexLayout::HexLayout(double h, Vec2 origin, int cols, int rows)
    : h_(h), origin_(std::move(origin)), cols_(cols), rows_(rows) {
  if (!(h > 0.0) || cols < 1 || rows < 1) {
    throw ContractViolation("hex layout needs h > 0 and at least one row and column");
  }
}

Vec2 HexLayout::fractional(const Vec2& p) const {
  const Vec2 d = p - origin_;
  const double fj = d.y() / (h_ * kHalfSqrt3);
  const double fi = d.x() / h_ - 0.5 * fj;
  return {fi, fj};
}

HexTriangle HexLayout::locate(const Vec2& p) const {
  const Vec2 f = fractional(p);
  const int i0 = static_cast<int>(std::floor(f.x()));
  const int j0 = static_cast<int>(std::floor(f.y()));
  const double u = f.x() - i0;
  const double v = f.y() - j0;
  if (u + v <= 1.0) {
    return {{HexIndex{i0, j0}, HexIndex{i0 + 1, j0}, HexIndex{i0, j0 + 1}}, {1.0 - u - v, u, v}};
  }
  return {{HexIndex{i0 + 1, j0 + 1}, HexIndex{i0, j0 + 1}, HexIndex{i0 + 1, j0}},
          {u + v - 1.0, 1.0 - u, 1.0 - v}};
}

HexIndex HexLayout::nearest(const Vec2& p) const {
  const HexTriangle tri = locate(p);
  HexIndex best = tri.nodes[0];
  double best_d = std::numeric_limits<double>::infinity();
  for (const HexIndex& n : tri.nodes) {
    const double d = (position(n) - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

}  // namespace camis
