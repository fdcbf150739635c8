#pragma once

#include <variant>
#include <vector>

#include "staghunt/arena.hpp"
#include "staghunt/grid_map.hpp"

namespace staghunt {

struct PlanRequest {
  Position start;
  Position stag;
  Position hare;
  double attack_range = 5.0;
  double safe_distance = 3.0;
};

// 4-connected cell sequence from start to the standoff cell, inclusive.
struct Path {
  std::vector<Position> cells;

  bool empty() const { return cells.empty(); }
  size_t length() const { return cells.size(); }
  const Position& terminal() const { return cells.back(); }
};

enum class PlanError { NoSafePath, InvalidStart };

using PlanResult = std::variant<Path, PlanError>;

inline bool ok(const PlanResult& r) { return std::holds_alternative<Path>(r); }
inline const Path& path_of(const PlanResult& r) { return std::get<Path>(r); }
inline PlanError error_of(const PlanResult& r) {
  return std::get<PlanError>(r);
}

// True for cells a path may occupy: in bounds, not a wall, and at least
// safe_distance away from the hare (cells at exactly safe_distance are
// permitted).
bool safe_cell(const GridMap& map, const Position& c, const PlanRequest& req);

// Standoff goal test: the stag is in attack range (with line of sight)
// from g, and g itself is safe.
bool standoff_goal(const GridMap& map, const Position& g,
                   const PlanRequest& req);

// Shortest 4-connected path (unit step cost) to the nearest cell of the
// standoff goal set, never entering the hare's exclusion zone. A* with an
// admissible Euclidean heuristic and fixed tie-breaking (lower f, then
// lower h, then row-major order), so results are deterministic and
// length-optimal. Returns InvalidStart when the start cell is a wall, out
// of bounds, or already inside the exclusion zone; NoSafePath when the
// goal set is unreachable.
PlanResult plan(const GridMap& map, const PlanRequest& req);

// Action moving from `current` to its successor on the path; Stop at the
// terminal cell. Throws std::invalid_argument if `current` is not on the
// path (caller must replan).
Action next_action(const Path& path, const Position& current);

}  // namespace staghunt
