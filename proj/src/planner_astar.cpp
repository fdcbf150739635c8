#include "staghunt/planner_astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace staghunt {

bool safe_cell(const GridMap& map, const Position& c, const PlanRequest& req) {
  if (!map.passable(c)) return false;
  const double s = req.safe_distance;
  return static_cast<double>(distance_sq(c, req.hare)) >= s * s;
}

bool standoff_goal(const GridMap& map, const Position& g,
                   const PlanRequest& req) {
  if (!safe_cell(map, g, req)) return false;
  ArenaConfig attack;
  attack.attack_range = req.attack_range;
  return in_attack_range(g, req.stag, attack, map);
}

namespace {

// Lower bound on remaining steps: Euclidean shrink of the attack disc.
// Any goal g satisfies |g - stag| <= R, so steps(c -> g) >= |c - stag| - R,
// and step counts are integral.
int heuristic(const Position& c, const PlanRequest& req) {
  const double r = req.attack_range;
  const double sq = static_cast<double>(distance_sq(c, req.stag));
  if (sq <= r * r) return 0;
  return static_cast<int>(std::ceil(std::sqrt(sq) - r));
}

struct OpenNode {
  int f;
  int h;
  int index;  // row-major cell index, final tie-break

  bool operator>(const OpenNode& o) const {
    if (f != o.f) return f > o.f;
    if (h != o.h) return h > o.h;
    return index > o.index;
  }
};

}  // namespace

PlanResult plan(const GridMap& map, const PlanRequest& req) {
  if (!map.in_bounds(req.start) || map.is_wall(req.start) ||
      !safe_cell(map, req.start, req)) {
    return PlanError::InvalidStart;
  }

  const int w = map.width();
  const int n = w * map.height();
  const auto index_of = [w](const Position& p) { return p.y * w + p.x; };

  std::vector<int> g(n, std::numeric_limits<int>::max());
  std::vector<int> parent(n, -1);
  std::priority_queue<OpenNode, std::vector<OpenNode>, std::greater<>> open;

  const int start_idx = index_of(req.start);
  g[start_idx] = 0;
  open.push({heuristic(req.start, req), heuristic(req.start, req), start_idx});

  int goal_idx = -1;
  while (!open.empty()) {
    const OpenNode node = open.top();
    open.pop();
    const Position cur{node.index % w, node.index / w};
    if (node.f - node.h > g[node.index]) continue;  // stale entry

    if (standoff_goal(map, cur, req)) {
      goal_idx = node.index;
      break;
    }

    static constexpr std::array<Position, 4> kSteps{
        Position{0, -1}, Position{0, 1}, Position{-1, 0}, Position{1, 0}};
    for (const Position& d : kSteps) {
      const Position nb{cur.x + d.x, cur.y + d.y};
      if (!safe_cell(map, nb, req)) continue;
      const int nb_idx = index_of(nb);
      const int tentative = g[node.index] + 1;
      if (tentative < g[nb_idx]) {
        g[nb_idx] = tentative;
        parent[nb_idx] = node.index;
        const int h = heuristic(nb, req);
        open.push({tentative + h, h, nb_idx});
      }
    }
  }

  if (goal_idx < 0) return PlanError::NoSafePath;

  Path path;
  for (int i = goal_idx; i >= 0; i = parent[i]) {
    path.cells.push_back({i % w, i / w});
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

Action next_action(const Path& path, const Position& current) {
  for (size_t i = 0; i < path.cells.size(); ++i) {
    if (path.cells[i] != current) continue;
    if (i + 1 == path.cells.size()) return Action::Stop;
    const Position& nxt = path.cells[i + 1];
    if (nxt.x == current.x + 1) return Action::Right;
    if (nxt.x == current.x - 1) return Action::Left;
    if (nxt.y == current.y + 1) return Action::Down;
    return Action::Up;
  }
  throw std::invalid_argument("next_action: current cell is not on the path");
}

}  // namespace staghunt
