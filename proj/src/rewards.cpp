#include "staghunt/rewards.hpp"

#include <optional>

namespace staghunt {

StagAssignment assign_stag(const ArenaState& state) {
  const Position& a1 = state.at(RobotId::Agent1);
  const Position& a2 = state.at(RobotId::Agent2);
  const Position& e1 = state.seen(RobotId::Enemy1);
  const Position& e2 = state.seen(RobotId::Enemy2);
  const double sum1 = distance(a1, e1) + distance(a2, e1);
  const double sum2 = distance(a1, e2) + distance(a2, e2);
  if (sum2 < sum1) return {RobotId::Enemy2, RobotId::Enemy1};
  return {RobotId::Enemy1, RobotId::Enemy2};
}

double r1(const ArenaState& state, RobotId agent, const Position& stag,
          const RewardConfig& cfg) {
  return -distance(state.at(agent), stag) / cfg.beta;
}

double punishment(const ArenaState& state, RobotId agent, const Position& hare,
                  const RewardConfig& cfg) {
  const double d = distance(state.at(agent), hare);
  if (cfg.punishment_mode == PunishmentMode::Paper) {
    return -d / cfg.attack_range;
  }
  return -std::max(0.0, (cfg.attack_range - d) / cfg.attack_range);
}

double r2(const ArenaState& state, RobotId agent,
          const StagAssignment& assignment, const RewardConfig& cfg) {
  return r1(state, agent, state.seen(assignment.stag), cfg) +
         punishment(state, agent, state.seen(assignment.hare), cfg);
}

namespace {

std::optional<HuntChoice> attack_choice(const ArenaState& state, RobotId agent,
                                        const StagAssignment& assignment,
                                        const RewardConfig& cfg,
                                        const GridMap& map) {
  ArenaConfig attack;
  attack.attack_range = cfg.attack_range;
  if (in_attack_range(state.at(agent), state.at(assignment.stag), attack, map)) {
    return HuntChoice::Stag;
  }
  if (in_attack_range(state.at(agent), state.at(assignment.hare), attack, map)) {
    return HuntChoice::Hare;
  }
  return std::nullopt;
}

}  // namespace

std::pair<double, double> coop_bonus(const ArenaState& state,
                                     const StagAssignment& assignment,
                                     const RewardConfig& cfg,
                                     const GridMap& map) {
  const auto c1 = attack_choice(state, RobotId::Agent1, assignment, cfg, map);
  const auto c2 = attack_choice(state, RobotId::Agent2, assignment, cfg, map);
  if (!c1 || !c2) return {0.0, 0.0};
  auto [p1, p2] = cfg.payoff.payoff(*c1, *c2);
  return {cfg.coop_bonus_scale * p1, cfg.coop_bonus_scale * p2};
}

double sparse_reward(const ArenaState& state, RobotId agent,
                     const StagAssignment& assignment, const RewardConfig& cfg,
                     const GridMap& map) {
  ArenaConfig attack;
  attack.attack_range = cfg.attack_range;
  const bool hit =
      in_attack_range(state.at(agent), state.at(assignment.stag), attack, map);
  const auto bonus = coop_bonus(state, assignment, cfg, map);
  const double own =
      agent == RobotId::Agent1 ? bonus.first : bonus.second;
  return (hit ? cfg.sparse_hit_reward : 0.0) + own;
}

}  // namespace staghunt
