#include "camis/hex_terrain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "camis/errors.hpp"
#include "text_util.hpp"

namespace camis {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676;
constexpr double kWeightEps = 1e-12;
constexpr double kFlatGradient = 1e-12;
constexpr const char* kArtifactMagic = "camis-hex-terrain";
constexpr int kArtifactVersion = 1;

}  // namespace

std::optional<HexTerrain::Slope> HexTerrain::interpolate(const Vec2& p) const {
  const HexTriangle tri = layout_.locate(p);
  Vec2 gradient = Vec2::Zero();
  double elevation = 0.0;
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double w = tri.weights[k];
    if (w <= kWeightEps) continue;
    if (!valid(tri.nodes[k])) return std::nullopt;
    const HexNode& n = node(tri.nodes[k]);
    gradient += w * std::tan(n.steepness) * n.aspect;
    elevation += w * n.elevation;
    total += w;
  }
  if (total <= 0.0) return std::nullopt;
  gradient /= total;
  elevation /= total;
  const double g = gradient.norm();
  if (g < kFlatGradient) return Slope{0.0, Vec2::UnitX(), true, elevation};
  return Slope{std::atan(g), gradient / g, false, elevation};
}

std::optional<HexIndex> HexTerrain::node_at(const Vec2& p) const {
  const HexIndex idx = layout_.nearest(p);
  if (!valid(idx)) return std::nullopt;
  if ((position(idx) - p).norm() > resolution()) return std::nullopt;
  return idx;
}

HexLayout fit_layout(const ElevationGrid& grid, double h) {
  grid.validate();
  if (!(h > 0.0)) throw ContractViolation("hex resolution must be positive");
  const double width = (static_cast<double>(grid.n_cols) - 1.0) * grid.cell_size;
  const double height = (static_cast<double>(grid.n_rows) - 1.0) * grid.cell_size;
  const int rows = static_cast<int>(std::floor(height / (h * kHalfSqrt3) + 1e-9)) + 1;
  const double usable = rows > 1 ? width - 0.5 * h : width;
  if (usable < 0.0) throw BoundsError("raster narrower than one hex row offset");
  const int cols = static_cast<int>(std::floor(usable / h + 1e-9)) + 1;
  const Vec2 origin{grid.cell_center_x(0), grid.cell_center_y(grid.n_rows - 1)};
  return HexLayout(h, origin, cols, rows);
}

HexTerrain resample_to_hex(const ElevationGrid& grid, double h) {
  return resample_to_hex(grid, fit_layout(grid, h));
}

HexTerrain resample_to_hex(const ElevationGrid& grid, const HexLayout& layout) {
  grid.validate();
  if (layout.resolution() < grid.cell_size) {
    throw ContractViolation(fmt::format("hex resolution {} is finer than the raster cell size {}",
                                        layout.resolution(), grid.cell_size));
  }
  HexTerrain terrain(layout);
  const double cx0 = grid.cell_center_x(0);
  const double cy0 = grid.cell_center_y(grid.n_rows - 1);
  const double max_u = static_cast<double>(grid.n_cols - 1);
  const double max_v = static_cast<double>(grid.n_rows - 1);
  constexpr double tol = 1e-9;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const HexIndex idx = layout.index(k);
    const Vec2 p = layout.position(idx);
    double u = (p.x() - cx0) / grid.cell_size;
    double v = (p.y() - cy0) / grid.cell_size;
    if (u < -tol || v < -tol || u > max_u + tol || v > max_v + tol) {
      throw BoundsError(fmt::format("hex node ({}, {}) at ({}, {}) lies outside the raster extent", idx.i,
                                    idx.j, p.x(), p.y()));
    }
    u = std::clamp(u, 0.0, max_u);
    v = std::clamp(v, 0.0, max_v);
    const auto c0 = static_cast<std::size_t>(std::min(std::floor(u), max_u - 1.0));
    const auto b0 = static_cast<std::size_t>(std::min(std::floor(v), max_v - 1.0));
    const double tu = u - static_cast<double>(c0);
    const double tv = v - static_cast<double>(b0);
    const std::size_t r0 = grid.n_rows - 1 - b0;  // raster row of the lower sample
    const std::size_t r1 = r0 - 1;
    const double w[4] = {(1 - tu) * (1 - tv), tu * (1 - tv), (1 - tu) * tv, tu * tv};
    const double z[4] = {grid.at(r0, c0), grid.at(r0, c0 + 1), grid.at(r1, c0), grid.at(r1, c0 + 1)};
    HexNode& node = terrain.node(k);
    node.valid = true;
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) {
      if (w[q] == 0.0) continue;
      if (z[q] == grid.nodata) {
        node.valid = false;
        break;
      }
      acc += w[q] * z[q];
    }
    node.elevation = node.valid ? acc : 0.0;
  }
  return terrain;
}

void slope_fields(HexTerrain& terrain) {
  const HexLayout& layout = terrain.layout();
  std::vector<char> was_valid(terrain.size());
  for (std::size_t k = 0; k < terrain.size(); ++k) was_valid[k] = terrain.node(k).valid;

  for (std::size_t k = 0; k < terrain.size(); ++k) {
    if (!was_valid[k]) continue;
    const HexIndex idx = layout.index(k);
    const Vec2 centre = layout.position(idx);
    const double z0 = terrain.node(k).elevation;

    Eigen::Matrix<double, 7, 3> a;
    Eigen::Matrix<double, 7, 1> b;
    int n = 0;
    a.row(n) << 1.0, 0.0, 0.0;
    b(n++) = 0.0;
    for (const HexIndex& nb : neighborhood(idx)) {
      if (!layout.contains(nb) || !was_valid[layout.linear(nb)]) continue;
      const Vec2 d = layout.position(nb) - centre;
      a.row(n) << 1.0, d.x(), d.y();
      b(n++) = terrain.node(nb).elevation - z0;
    }
    HexNode& node = terrain.node(k);
    if (n < 3) {
      node.valid = false;
      continue;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.topRows(n));
    if (qr.rank() < 3) {
      node.valid = false;
      continue;
    }
    const Eigen::Vector3d coef = qr.solve(b.head(n));
    const Vec2 downhill{-coef(1), -coef(2)};
    const double g = downhill.norm();
    if (g < kFlatGradient) {
      node.steepness = 0.0;
      node.aspect = Vec2::UnitX();
      node.isotropic = true;
    } else {
      node.steepness = std::atan(g);
      node.aspect = downhill / g;
      node.isotropic = false;
    }
  }
}

std::string to_artifact(const HexTerrain& terrain) {
  const HexLayout& layout = terrain.layout();
  std::string out;
  out += fmt::format("{} {}\n", kArtifactMagic, kArtifactVersion);
  out += fmt::format("resolution {}\n", layout.resolution());
  out += fmt::format("origin {} {}\n", layout.origin().x(), layout.origin().y());
  out += fmt::format("size {} {}\n", layout.cols(), layout.rows());
  out += "i,j,x,y,elevation,alpha_rad,aspect_x,aspect_y,isotropic,valid\n";
  for (std::size_t k = 0; k < terrain.size(); ++k) {
    const HexIndex idx = layout.index(k);
    const Vec2 p = layout.position(idx);
    const HexNode& n = terrain.node(k);
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", idx.i, idx.j, p.x(), p.y(), n.elevation, n.steepness,
                       n.aspect.x(), n.aspect.y(), n.isotropic ? 1 : 0, n.valid ? 1 : 0);
  }
  return out;
}

HexTerrain parse_artifact(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line)) throw FormatError("unexpected end of terrain artifact", line_no + 1);
    ++line_no;
    return line;
  };
  {
    std::istringstream ls(next());
    std::string magic;
    int version = 0;
    ls >> magic >> version;
    if (magic != kArtifactMagic) throw FormatError("not a hex terrain artifact", line_no);
    if (version != kArtifactVersion) {
      throw FormatError(fmt::format("unsupported artifact version {}", version), line_no);
    }
  }
  auto keyed = [&](const char* key, int count) {
    std::istringstream ls(next());
    std::string k;
    ls >> k;
    if (k != key) throw FormatError(std::string("expected '") + key + "'", line_no);
    std::vector<std::string> vals(static_cast<std::size_t>(count));
    for (auto& v : vals) {
      if (!(ls >> v)) throw FormatError(std::string("missing value for '") + key + "'", line_no);
    }
    return vals;
  };
  auto num = [&](const std::string& s) {
    const auto v = detail::to_double(s);
    if (!v) throw FormatError("cannot parse number '" + s + "'", line_no);
    return *v;
  };
  const double h = num(keyed("resolution", 1)[0]);
  const auto origin = keyed("origin", 2);
  const auto size = keyed("size", 2);
  HexTerrain terrain(HexLayout(h, Vec2{num(origin[0]), num(origin[1])}, static_cast<int>(num(size[0])),
                               static_cast<int>(num(size[1]))));
  next();  // column header
  for (std::size_t k = 0; k < terrain.size(); ++k) {
    std::istringstream ls(next());
    std::vector<std::string> f;
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 10) throw FormatError("expected 10 columns", line_no);
    const HexIndex idx{static_cast<int>(num(f[0])), static_cast<int>(num(f[1]))};
    if (!terrain.contains(idx) || terrain.layout().linear(idx) != k) {
      throw FormatError("node rows out of order", line_no);
    }
    HexNode& n = terrain.node(k);
    n.elevation = num(f[4]);
    n.steepness = num(f[5]);
    n.aspect = Vec2{num(f[6]), num(f[7])};
    n.isotropic = f[8] == "1";
    n.valid = f[9] == "1";
  }
  return terrain;
}

void write_artifact(const HexTerrain& terrain, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_artifact(terrain);
}

HexTerrain read_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open terrain artifact: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_artifact(ss.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace camis
