#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>

#include <Eigen/Core>

namespace camis {

using Vec2 = Eigen::Vector2d;

/// Axial coordinates of a node on the regular hexagonal lattice.
struct HexIndex {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const HexIndex&, const HexIndex&) = default;
};

/// Node position relative to the lattice origin: [h*i + h/2*j, h*sqrt(3)/2*j].
Vec2 hex_position(HexIndex idx, double h);

/// The six neighbours in fixed order:
/// (i+1,j), (i,j+1), (i-1,j+1), (i-1,j), (i,j-1), (i+1,j-1).
std::array<HexIndex, 6> neighborhood(HexIndex idx);

/// Hexagonal distance (number of lattice steps) between two nodes.
int hex_distance(HexIndex a, HexIndex b);

/// A triangle of the lattice and the barycentric weights of a point inside it.
struct HexTriangle {
  std::array<HexIndex, 3> nodes;
  std::array<double, 3> weights;
};

/// Rectangular patch of the lattice: rows j in [0, rows), and in row j the
/// columns i in [-(j/2), -(j/2) + cols), so odd rows are shifted by h/2.
class HexLayout {
 public:
  HexLayout() = default;
  HexLayout(double h, Vec2 origin, int cols, int rows);

  double resolution() const { return h_; }
  const Vec2& origin() const { return origin_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }
  std::size_t size() const { return static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_); }

  static int row_begin(int j) { return -(j / 2); }

  bool contains(HexIndex idx) const {
    if (idx.j < 0 || idx.j >= rows_) return false;
    const int c = idx.i - row_begin(idx.j);
    return c >= 0 && c < cols_;
  }
  std::size_t linear(HexIndex idx) const {
    return static_cast<std::size_t>(idx.j) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(idx.i - row_begin(idx.j));
  }
  HexIndex index(std::size_t linear) const {
    const int j = static_cast<int>(linear / static_cast<std::size_t>(cols_));
    const int c = static_cast<int>(linear % static_cast<std::size_t>(cols_));
    return {c + row_begin(j), j};
  }

  /// World position of a node.
  Vec2 position(HexIndex idx) const { return origin_ + hex_position(idx, h_); }

  /// Fractional axial coordinates of a world point.
  Vec2 fractional(const Vec2& p) const;

  /// Lattice triangle containing p with barycentric weights (nodes may lie
  /// outside the layout; callers check contains()).
  HexTriangle locate(const Vec2& p) const;

  /// Closest lattice node to p (may lie outside the layout).
  HexIndex nearest(const Vec2& p) const;

 private:
  double h_ = 1.0;
  Vec2 origin_ = Vec2::Zero();
  int cols_ = 0;
  int rows_ = 0;
};

}  // namespace camis
