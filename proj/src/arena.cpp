#include "staghunt/arena.hpp"

#include <algorithm>
#include <stdexcept>

namespace staghunt {

Position action_delta(Action a) {
  switch (a) {
    case Action::Up: return {0, -1};
    case Action::Down: return {0, 1};
    case Action::Left: return {-1, 0};
    case Action::Right: return {1, 0};
    case Action::Stop: return {0, 0};
  }
  return {0, 0};
}

ArenaState make_state(const std::array<Position, kNumRobots>& spawn) {
  ArenaState s;
  s.pos = spawn;
  s.last_seen = spawn;
  s.step = 0;
  return s;
}

namespace {

bool robot_visible_to_team(const ArenaState& state, RobotId target, Team team,
                           const GridMap& map, const ArenaConfig& cfg) {
  for (RobotId observer : team_robots(team)) {
    const Position& from = state.at(observer);
    const Position& to = state.at(target);
    const double r = cfg.sensor_range;
    if (static_cast<double>(distance_sq(from, to)) <= r * r &&
        line_of_sight(map, from, to)) {
      return true;
    }
  }
  return false;
}

}  // namespace

ArenaState step(const ArenaState& state, const JointAction& actions,
                const GridMap& map, const ArenaConfig& cfg) {
  ArenaState next = state;

  // Sequential resolution in fixed id order: the occupancy check sees
  // already-moved robots at their new cells and pending robots at their
  // current cells.
  for (RobotId r : all_robots()) {
    const int i = static_cast<int>(r);
    const Position d = action_delta(actions[i]);
    const Position target{next.pos[i].x + d.x, next.pos[i].y + d.y};
    if (!map.passable(target)) continue;
    bool occupied = false;
    for (int j = 0; j < kNumRobots; ++j) {
      if (j != i && next.pos[j] == target) {
        occupied = true;
        break;
      }
    }
    if (!occupied) next.pos[i] = target;
  }

  for (RobotId r : all_robots()) {
    if (robot_visible_to_team(next, r, opposing(team_of(r)), map, cfg)) {
      next.seen(r) = next.at(r);
    }
  }
  next.step = state.step + 1;
  return next;
}

std::vector<Position> visible_cells(const GridMap& map, const Position& from,
                                    double range) {
  if (!map.in_bounds(from) || map.is_wall(from)) {
    throw std::invalid_argument("visible_cells: pose out of bounds or on a wall");
  }
  std::vector<Position> out;
  const int r = static_cast<int>(std::floor(range));
  const int x0 = std::max(0, from.x - r);
  const int x1 = std::min(map.width() - 1, from.x + r);
  const int y0 = std::max(0, from.y - r);
  const int y1 = std::min(map.height() - 1, from.y + r);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Position c{x, y};
      if (static_cast<double>(distance_sq(from, c)) > range * range) continue;
      if (line_of_sight(map, from, c)) out.push_back(c);
    }
  }
  return out;
}

Observation observation(const ArenaState& state, RobotId agent,
                        const GridMap& map) {
  if (team_of(agent) != Team::Blue) {
    throw std::invalid_argument("observation: agent must be Agent1 or Agent2");
  }
  const RobotId ally = teammate_of(agent);
  const Position& a = state.at(agent);
  const Position& b = state.at(ally);
  const Position& e1 = state.seen(RobotId::Enemy1);
  const Position& e2 = state.seen(RobotId::Enemy2);
  const double w = map.width();
  const double h = map.height();
  Observation obs;
  obs << a.x / w, a.y / h, b.x / w, b.y / h, e1.x / w, e1.y / h, e2.x / w,
      e2.y / h;
  return obs;
}

ArenaState mirrored(const ArenaState& state) {
  ArenaState m = state;
  std::swap(m.pos[0], m.pos[2]);
  std::swap(m.pos[1], m.pos[3]);
  std::swap(m.last_seen[0], m.last_seen[2]);
  std::swap(m.last_seen[1], m.last_seen[3]);
  return m;
}

bool in_attack_range(const Position& a, const Position& b,
                     const ArenaConfig& cfg, const GridMap& map) {
  const double r = cfg.attack_range;
  if (static_cast<double>(distance_sq(a, b)) > r * r) return false;
  return line_of_sight(map, a, b);
}

bool is_two_v_one(const ArenaState& state, Team team, const ArenaConfig& cfg,
                  const GridMap& map) {
  const auto mates = team_robots(team);
  for (RobotId target : team_robots(opposing(team))) {
    if (in_attack_range(state.at(mates[0]), state.at(target), cfg, map) &&
        in_attack_range(state.at(mates[1]), state.at(target), cfg, map)) {
      return true;
    }
  }
  return false;
}

}  // namespace staghunt
