#include "camis/elevation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "camis/errors.hpp"
#include "text_util.hpp"

namespace camis {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(std::string_view token, std::size_t line) {
  const auto value = detail::to_double(token);
  if (!value) throw FormatError("cannot parse number '" + std::string(token) + "'", line);
  return *value;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  const double v = parse_double(token, line);
  if (!(v >= 0.0) || v != std::floor(v)) {
    throw FormatError("expected a non-negative integer, got '" + std::string(token) + "'", line);
  }
  return static_cast<std::size_t>(v);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open elevation file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

void ElevationGrid::validate() const {
  if (n_cols < 2 || n_rows < 2) throw DataError("elevation grid needs at least 2x2 cells");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw DataError("cell size must be positive");
  if (values.size() != n_cols * n_rows) {
    throw DataError(fmt::format("expected {} values, got {}", n_cols * n_rows, values.size()));
  }
  for (double v : values) {
    if (v != nodata && !std::isfinite(v)) throw DataError("non-finite elevation value");
  }
}

ElevationFormat parse_elevation_format(const std::string& name) {
  const std::string n = lower(name);
  if (n == "ascii-grid" || n == "asc" || n == "ascii") return ElevationFormat::AsciiGrid;
  if (n == "csv") return ElevationFormat::Csv;
  throw ConfigError("unknown elevation format '" + name + "' (expected ascii-grid or csv)");
}

ElevationGrid parse_ascii_grid(const std::string& text) {
  ElevationGrid grid;
  std::map<std::string, std::string> header;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  std::size_t last_line = 0;
  bool in_body = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (!in_body) {
      const bool is_key = std::isalpha(static_cast<unsigned char>(tokens[0][0])) != 0 &&
                          lower(std::string(tokens[0])) != "nan" && lower(std::string(tokens[0])) != "inf";
      if (is_key) {
        if (tokens.size() != 2) throw FormatError("header line must be '<key> <value>'", line_no);
        const std::string key = lower(std::string(tokens[0]));
        if (header.count(key)) throw FormatError("duplicate header key '" + key + "'", line_no);
        parse_double(tokens[1], line_no);
        header[key] = std::string(tokens[1]);
        continue;
      }
      in_body = true;
    }
    for (auto tok : tokens) values.push_back(parse_double(tok, line_no));
    last_line = line_no;
  }

  auto need = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw FormatError(std::string("missing header key '") + key + "'");
    return it->second;
  };
  grid.n_cols = parse_count(need("ncols"), 0);
  grid.n_rows = parse_count(need("nrows"), 0);
  grid.cell_size = parse_double(need("cellsize"), 0);
  if (header.count("xllcorner")) {
    grid.origin_x = parse_double(header["xllcorner"], 0);
  } else if (header.count("xllcenter")) {
    grid.origin_x = parse_double(header["xllcenter"], 0) - 0.5 * grid.cell_size;
  }
  if (header.count("yllcorner")) {
    grid.origin_y = parse_double(header["yllcorner"], 0);
  } else if (header.count("yllcenter")) {
    grid.origin_y = parse_double(header["yllcenter"], 0) - 0.5 * grid.cell_size;
  }
  if (header.count("nodata_value")) grid.nodata = parse_double(header["nodata_value"], 0);

  const std::size_t expected = grid.n_cols * grid.n_rows;
  if (values.size() != expected) {
    throw FormatError(fmt::format("expected {} values, got {}", expected, values.size()),
                      last_line);
  }
  grid.values = std::move(values);
  grid.validate();
  return grid;
}

ElevationGrid parse_xyz_csv(const std::string& text) {
  struct Sample {
    double x, y, z;
  };
  std::vector<Sample> samples;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) {
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (fields.size() != 3) throw FormatError("expected 3 comma-separated fields (x,y,z)", line_no);
    if (samples.empty() && lower(fields[0]) == "x") continue;  // header
    Sample s{parse_double(fields[0], line_no), parse_double(fields[1], line_no),
             parse_double(fields[2], line_no)};
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
      throw DataError(fmt::format("line {}: non-finite value", line_no));
    }
    samples.push_back(s);
  }
  if (samples.size() < 4) throw DataError("csv lattice needs at least 2x2 samples");

  auto unique_sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  std::vector<double> xs, ys;
  for (const auto& s : samples) {
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  xs = unique_sorted(std::move(xs));
  ys = unique_sorted(std::move(ys));
  if (xs.size() < 2 || ys.size() < 2) throw DataError("csv lattice needs at least 2x2 samples");
  const double step = xs[1] - xs[0];
  auto regular = [step](const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (std::abs((v[k] - v[k - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) return false;
    }
    return true;
  };
  if (!regular(xs) || !regular(ys)) throw DataError("csv samples do not form a regular square lattice");
  if (samples.size() != xs.size() * ys.size()) {
    throw DataError(fmt::format("csv lattice incomplete: expected {} samples, got {}",
                                xs.size() * ys.size(), samples.size()));
  }

  ElevationGrid grid;
  grid.n_cols = xs.size();
  grid.n_rows = ys.size();
  grid.cell_size = step;
  grid.origin_x = xs.front() - 0.5 * step;
  grid.origin_y = ys.front() - 0.5 * step;
  grid.values.assign(grid.n_cols * grid.n_rows, grid.nodata);
  std::vector<char> seen(grid.values.size(), 0);
  for (const auto& s : samples) {
    const auto col = static_cast<std::size_t>(std::llround((s.x - xs.front()) / step));
    const auto row_from_bottom = static_cast<std::size_t>(std::llround((s.y - ys.front()) / step));
    const std::size_t row = grid.n_rows - 1 - row_from_bottom;
    const std::size_t k = row * grid.n_cols + col;
    if (seen[k]) throw DataError("csv lattice has duplicate sample");
    seen[k] = 1;
    grid.values[k] = s.z;
  }
  grid.validate();
  return grid;
}

ElevationGrid load_elevation(const std::filesystem::path& path, ElevationFormat format) {
  const std::string text = read_file(path);
  try {
    return format == ElevationFormat::AsciiGrid ? parse_ascii_grid(text) : parse_xyz_csv(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string to_ascii_grid(const ElevationGrid& grid) {
  std::string out;
  out += fmt::format("ncols {}\nnrows {}\n", grid.n_cols, grid.n_rows);
  out += fmt::format("xllcorner {}\nyllcorner {}\n", grid.origin_x, grid.origin_y);
  out += fmt::format("cellsize {}\nNODATA_value {}\n", grid.cell_size, grid.nodata);
  for (std::size_t r = 0; r < grid.n_rows; ++r) {
    for (std::size_t c = 0; c < grid.n_cols; ++c) {
      if (c > 0) out += ' ';
      out += fmt::format("{}", grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_ascii_grid(const ElevationGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_ascii_grid(grid);
}

ElevationGrid smooth(const ElevationGrid& grid, int window_radius) {
  if (window_radius < 0) throw ContractViolation("smoothing radius must be >= 0");
  if (window_radius == 0) return grid;
  ElevationGrid out = grid;
  const auto rows = static_cast<long>(grid.n_rows);
  const auto cols = static_cast<long>(grid.n_cols);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      double sum = 0.0;
      long count = 0;
      for (long rr = std::max(0L, r - window_radius); rr <= std::min(rows - 1, r + window_radius); ++rr) {
        for (long cc = std::max(0L, c - window_radius); cc <= std::min(cols - 1, c + window_radius); ++cc) {
          const double v = grid.values[static_cast<std::size_t>(rr * cols + cc)];
          if (v == grid.nodata) continue;
          sum += v;
          ++count;
        }
      }
      out.values[static_cast<std::size_t>(r * cols + c)] = count > 0 ? sum / static_cast<double>(count) : grid.nodata;
    }
  }
  return out;
}

}  // namespace camis
