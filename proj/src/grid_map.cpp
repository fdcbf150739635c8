#include "staghunt/grid_map.hpp"

#include <fstream>
#include <sstream>

namespace staghunt {

GridMap::GridMap(int width, int height, CellKind fill)
    : width_(width), height_(height) {
  if (width < 2 || height < 2) {
    throw std::invalid_argument("GridMap: width and height must be >= 2");
  }
  cells_.assign(static_cast<size_t>(width) * height, fill);
}

std::vector<Position> GridMap::empty_cells() const {
  std::vector<Position> out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (at(x, y) == CellKind::Empty) out.push_back({x, y});
    }
  }
  return out;
}

GridMap parse_map(const std::string& text) {
  std::vector<std::string> rows;
  std::string row;
  std::istringstream in(text);
  while (std::getline(in, row)) {
    if (!row.empty() && row.back() == '\r') row.pop_back();
    rows.push_back(row);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw MapParseError("map parse: empty input");

  const size_t width = rows[0].size();
  for (size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) {
      throw MapParseError("map parse: ragged row at line " +
                          std::to_string(y + 1) + " (expected width " +
                          std::to_string(width) + ", got " +
                          std::to_string(rows[y].size()) + ")");
    }
    for (size_t x = 0; x < rows[y].size(); ++x) {
      const char c = rows[y][x];
      if (c != '#' && c != '.') {
        throw MapParseError("map parse: illegal character '" +
                            std::string(1, c) + "' at line " +
                            std::to_string(y + 1) + ", column " +
                            std::to_string(x + 1));
      }
    }
  }

  GridMap map(static_cast<int>(width), static_cast<int>(rows.size()));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      map.set(x, y, rows[y][x] == '#' ? CellKind::Wall : CellKind::Empty);
    }
  }
  return map;
}

std::string serialize_map(const GridMap& map) {
  std::string out;
  out.reserve(static_cast<size_t>(map.height()) * (map.width() + 1));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      out += map.at(x, y) == CellKind::Wall ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

GridMap load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapParseError("map parse: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str());
}

std::vector<Position> supercover_line(const Position& a, const Position& b) {
  std::vector<Position> cells;
  const int nx = std::abs(b.x - a.x);
  const int ny = std::abs(b.y - a.y);
  const int sx = b.x > a.x ? 1 : -1;
  const int sy = b.y > a.y ? 1 : -1;
  cells.reserve(static_cast<size_t>(nx) + ny + 1);

  Position p = a;
  cells.push_back(p);
  int ix = 0, iy = 0;
  while (ix < nx || iy < ny) {
    // compare (ix + 1/2) / nx against (iy + 1/2) / ny, cross-multiplied
    const long long decision =
        (1LL + 2 * ix) * ny - (1LL + 2 * iy) * nx;
    if (decision == 0) {
      // exact corner crossing: both side cells are touched
      cells.push_back({p.x + sx, p.y});
      cells.push_back({p.x, p.y + sy});
      p.x += sx;
      p.y += sy;
      ++ix;
      ++iy;
    } else if (decision < 0) {
      p.x += sx;
      ++ix;
    } else {
      p.y += sy;
      ++iy;
    }
    cells.push_back(p);
  }
  return cells;
}

bool line_of_sight(const GridMap& map, const Position& a, const Position& b) {
  for (const Position& c : supercover_line(a, b)) {
    if (c == a || c == b) continue;
    if (!map.in_bounds(c) || map.is_wall(c)) return false;
  }
  return true;
}

}  // namespace staghunt
