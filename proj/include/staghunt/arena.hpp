#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "staghunt/grid_map.hpp"

namespace staghunt {

enum class RobotId : int { Agent1 = 0, Agent2 = 1, Enemy1 = 2, Enemy2 = 3 };
enum class Team : int { Blue = 0, Red = 1 };
enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3, Stop = 4 };

constexpr int kNumRobots = 4;
constexpr int kNumActions = 5;

constexpr std::array<RobotId, 4> all_robots() {
  return {RobotId::Agent1, RobotId::Agent2, RobotId::Enemy1, RobotId::Enemy2};
}

constexpr std::array<RobotId, 2> team_robots(Team t) {
  return t == Team::Blue
             ? std::array<RobotId, 2>{RobotId::Agent1, RobotId::Agent2}
             : std::array<RobotId, 2>{RobotId::Enemy1, RobotId::Enemy2};
}

constexpr Team opposing(Team t) {
  return t == Team::Blue ? Team::Red : Team::Blue;
}

constexpr Team team_of(RobotId r) {
  return (r == RobotId::Agent1 || r == RobotId::Agent2) ? Team::Blue
                                                        : Team::Red;
}

constexpr RobotId teammate_of(RobotId r) {
  switch (r) {
    case RobotId::Agent1: return RobotId::Agent2;
    case RobotId::Agent2: return RobotId::Agent1;
    case RobotId::Enemy1: return RobotId::Enemy2;
    default: return RobotId::Enemy1;
  }
}

// Unit displacement of an action; Stop maps to (0, 0). y grows downward
// (row index), so Up is -y.
Position action_delta(Action a);

struct ArenaConfig {
  double attack_range = 5.0;   // Euclidean, cells
  double safe_distance = 3.0;  // cells
  double sensor_range = 32.0;  // cells
  int max_steps = 400;         // per episode / match
};

// Full match state. pos holds ground-truth robot cells; last_seen[r] is the
// cell where r was last observed by the opposing team (initialized to the
// spawn position).
struct ArenaState {
  std::array<Position, kNumRobots> pos{};
  std::array<Position, kNumRobots> last_seen{};
  int step = 0;

  Position& at(RobotId r) { return pos[static_cast<int>(r)]; }
  const Position& at(RobotId r) const { return pos[static_cast<int>(r)]; }
  Position& seen(RobotId r) { return last_seen[static_cast<int>(r)]; }
  const Position& seen(RobotId r) const {
    return last_seen[static_cast<int>(r)];
  }

  friend bool operator==(const ArenaState&, const ArenaState&) = default;
};

using JointAction = std::array<Action, kNumRobots>;
using Observation = Eigen::Matrix<double, 8, 1>;

ArenaState make_state(const std::array<Position, kNumRobots>& spawn);

// Deterministic transition. Robots resolve in id order Agent1..Enemy2; a
// move into a wall, out of bounds, or into a currently occupied cell
// degrades to Stop. last_seen is refreshed for every robot visible to
// either opposing robot (sensor range + line of sight).
ArenaState step(const ArenaState& state, const JointAction& actions,
                const GridMap& map, const ArenaConfig& cfg);

// Every cell within Euclidean `range` of `from` whose connecting supercover
// ray crosses no wall. Includes `from`. Throws std::invalid_argument when
// `from` is out of bounds or a wall.
std::vector<Position> visible_cells(const GridMap& map, const Position& from,
                                    double range);

// 8-vector (agent, ally, enemy1, enemy2) positions, enemies taken from
// last_seen, x normalized by map width and y by map height. Only valid for
// Agent1/Agent2; use mirrored() for the red team's perspective.
Observation observation(const ArenaState& state, RobotId agent,
                        const GridMap& map);

// Role-swapped view: Agent1<->Enemy1, Agent2<->Enemy2 in both pos and
// last_seen. Lets red-team controllers reuse the blue-side observation.
ArenaState mirrored(const ArenaState& state);

// Euclidean distance <= attack_range and unobstructed line of sight
// (projectiles do not cross walls).
bool in_attack_range(const Position& a, const Position& b,
                     const ArenaConfig& cfg, const GridMap& map);

// True when some opposing robot is inside the attack range of both of
// `team`'s robots simultaneously.
bool is_two_v_one(const ArenaState& state, Team team, const ArenaConfig& cfg,
                  const GridMap& map);

}  // namespace staghunt
