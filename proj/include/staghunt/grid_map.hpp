#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace staghunt {

enum class CellKind : unsigned char { Wall, Empty };

struct Position {
  int x = 0;
  int y = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

// Row-major order for deterministic tie-breaking and serialization.
inline bool row_major_less(const Position& a, const Position& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

inline double distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline long long distance_sq(const Position& a, const Position& b) {
  const long long dx = a.x - b.x;
  const long long dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline int manhattan(const Position& a, const Position& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

class MapParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Static occupancy grid. Robots are a dynamic overlay kept in ArenaState,
// never written into the grid.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, CellKind fill = CellKind::Empty);

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool in_bounds(const Position& p) const { return in_bounds(p.x, p.y); }

  CellKind at(int x, int y) const { return cells_[y * width_ + x]; }
  CellKind at(const Position& p) const { return at(p.x, p.y); }
  void set(int x, int y, CellKind k) { cells_[y * width_ + x] = k; }

  bool is_wall(const Position& p) const { return at(p) == CellKind::Wall; }
  bool passable(const Position& p) const {
    return in_bounds(p) && at(p) == CellKind::Empty;
  }

  std::vector<Position> empty_cells() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<CellKind> cells_;
};

// '#' = wall, '.' = empty, one row per line. Throws MapParseError with the
// offending line/column on ragged, empty or illegal input.
GridMap parse_map(const std::string& text);

std::string serialize_map(const GridMap& map);

GridMap load_map_file(const std::string& path);

// All cells the closed segment between the centers of a and b passes
// through, corner touches included (both corner-adjacent cells appear).
// The result is symmetric in (a, b).
std::vector<Position> supercover_line(const Position& a, const Position& b);

// True when no cell strictly between a and b on the supercover line is a
// wall. Endpoints do not block themselves.
bool line_of_sight(const GridMap& map, const Position& a, const Position& b);

}  // namespace staghunt
