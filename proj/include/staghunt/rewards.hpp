#pragma once

#include <array>
#include <utility>

#include "staghunt/arena.hpp"

namespace staghunt {

enum class HuntChoice : int { Stag = 0, Hare = 1 };

// 2x2 stag-hunt payoff matrix, entries are (agent1, agent2) payoffs.
// Defaults: stag-stag (3,3), stag-hare (0,2), hare-stag (2,0),
// hare-hare (1,1).
struct PayoffTable {
  std::array<std::array<std::pair<double, double>, 2>, 2> cell{{
      {{{3.0, 3.0}, {0.0, 2.0}}},
      {{{2.0, 0.0}, {1.0, 1.0}}},
  }};

  std::pair<double, double> payoff(HuntChoice agent1, HuntChoice agent2) const {
    return cell[static_cast<int>(agent1)][static_cast<int>(agent2)];
  }
};

struct StagAssignment {
  RobotId stag = RobotId::Enemy1;
  RobotId hare = RobotId::Enemy2;
};

enum class PunishmentMode : int { Paper, Corrected };

struct RewardConfig {
  double beta = 52.0;  // normalization, arena width + height
  double attack_range = 5.0;
  PunishmentMode punishment_mode = PunishmentMode::Corrected;
  double sparse_hit_reward = 1.0;
  double coop_bonus_scale = 1.0;
  PayoffTable payoff{};

  static RewardConfig for_map(const GridMap& map, const ArenaConfig& arena) {
    RewardConfig cfg;
    cfg.beta = static_cast<double>(map.width() + map.height());
    cfg.attack_range = arena.attack_range;
    return cfg;
  }
};

// The stag is the enemy minimizing the summed distance from both agents
// (jointly easiest target), computed on last-seen coordinates. Exact ties
// go to Enemy1.
StagAssignment assign_stag(const ArenaState& state);

// Dense approach reward: -distance(agent, stag) / beta, in (-1, 0].
double r1(const ArenaState& state, RobotId agent, const Position& stag,
          const RewardConfig& cfg);

// Hare avoidance term. Paper mode is the literal
// -distance(agent, hare) / attack_range; corrected mode is
// -max(0, (attack_range - distance) / attack_range), zero outside the
// danger zone and -1 at contact.
double punishment(const ArenaState& state, RobotId agent, const Position& hare,
                  const RewardConfig& cfg);

// r2 = r1 + punishment under the active punishment mode.
double r2(const ArenaState& state, RobotId agent,
          const StagAssignment& assignment, const RewardConfig& cfg);

// Per-agent stag-hunt payoff for the current joint attack situation,
// scaled by coop_bonus_scale. The table applies only when BOTH agents have
// some enemy in attack range (ground-truth positions, line of sight
// included); otherwise (0, 0). An agent with both enemies in range counts
// as attacking the stag.
std::pair<double, double> coop_bonus(const ArenaState& state,
                                     const StagAssignment& assignment,
                                     const RewardConfig& cfg,
                                     const GridMap& map);

// Sparse variant: sparse_hit_reward while the agent holds the stag in
// attack range, else 0, plus this agent's share of coop_bonus.
double sparse_reward(const ArenaState& state, RobotId agent,
                     const StagAssignment& assignment, const RewardConfig& cfg,
                     const GridMap& map);

}  // namespace staghunt
