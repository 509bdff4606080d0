#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "camis/elevation.hpp"
#include "camis/hex_grid.hpp"

namespace camis {

/// Per-node surface description on the hexagonal lattice.
struct HexNode {
  double elevation = 0.0;
  double steepness = 0.0;         // alpha, radians in [0, pi/2)
  Vec2 aspect = Vec2::UnitX();    // gamma, unit downhill direction
  bool isotropic = true;          // alpha == 0: aspect is the (1,0) convention
  bool valid = false;
};

/// Hexagonal node lattice carrying elevation, steepness and aspect.
class HexTerrain {
 public:
  HexTerrain() = default;
  explicit HexTerrain(HexLayout layout) : layout_(std::move(layout)), nodes_(layout_.size()) {}

  const HexLayout& layout() const { return layout_; }
  double resolution() const { return layout_.resolution(); }
  std::size_t size() const { return nodes_.size(); }

  bool contains(HexIndex idx) const { return layout_.contains(idx); }
  bool valid(HexIndex idx) const { return layout_.contains(idx) && nodes_[layout_.linear(idx)].valid; }

  const HexNode& node(HexIndex idx) const { return nodes_[layout_.linear(idx)]; }
  HexNode& node(HexIndex idx) { return nodes_[layout_.linear(idx)]; }
  const HexNode& node(std::size_t linear) const { return nodes_[linear]; }
  HexNode& node(std::size_t linear) { return nodes_[linear]; }
  const std::vector<HexNode>& nodes() const { return nodes_; }

  Vec2 position(HexIndex idx) const { return layout_.position(idx); }

  /// Surface gradient interpolated barycentrically at a world point, as
  /// (steepness, aspect). Returns nullopt when a vertex carrying weight is
  /// outside the layout or invalid.
  struct Slope {
    double steepness;
    Vec2 aspect;
    bool isotropic;
    double elevation;
  };
  std::optional<Slope> interpolate(const Vec2& p) const;

  /// Nearest valid node to a world point, or nullopt when the point is off-grid.
  std::optional<HexIndex> node_at(const Vec2& p) const;

 private:
  HexLayout layout_;
  std::vector<HexNode> nodes_;
};

/// Lattice that fits inside the bilinear hull (cell centres) of the raster.
HexLayout fit_layout(const ElevationGrid& grid, double h);

/// Bilinear resampling of the raster onto the lattice nodes. Nodes touching
/// nodata are marked invalid. Throws BoundsError if the layout leaves the
/// raster's cell-centre hull and ContractViolation if h < cell size.
HexTerrain resample_to_hex(const ElevationGrid& grid, const HexLayout& layout);
HexTerrain resample_to_hex(const ElevationGrid& grid, double h);

/// Least-squares plane over each valid node and its valid neighbours; fills
/// steepness and aspect. Nodes with fewer than three usable points (or a
/// degenerate stencil) become invalid.
void slope_fields(HexTerrain& terrain);

/// Versioned text artifact (see README for the layout).
std::string to_artifact(const HexTerrain& terrain);
HexTerrain parse_artifact(const std::string& text);
void write_artifact(const HexTerrain& terrain, const std::filesystem::path& path);
HexTerrain read_artifact(const std::filesystem::path& path);

}  // namespace camis
