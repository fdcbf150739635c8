#pragma once

#include <array>
#include <memory>
#include <string>

#include "staghunt/arena.hpp"
#include "staghunt/dqn.hpp"
#include "staghunt/planner_astar.hpp"
#include "staghunt/rng.hpp"

namespace staghunt {

// A policy maps (state, controlled team) to actions for that team's two
// robots, deterministically given its RNG state. Red-team controllers see
// the state through mirrored().
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void reset(std::uint64_t /*match_seed*/) {}
  virtual std::array<Action, 2> act(const ArenaState& state, Team team) = 0;
  virtual std::string name() const = 0;
};

class StationaryPolicy final : public Policy {
 public:
  std::array<Action, 2> act(const ArenaState&, Team) override {
    return {Action::Stop, Action::Stop};
  }
  std::string name() const override { return "stationary"; }
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed = 0) : rng_(seed) {}
  void reset(std::uint64_t match_seed) override { rng_ = Rng(match_seed); }
  std::array<Action, 2> act(const ArenaState&, Team) override {
    return {static_cast<Action>(rng_.uniform_int(kNumActions)),
            static_cast<Action>(rng_.uniform_int(kNumActions))};
  }
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

// Replans every step: both teammates chase the shared stag assignment and
// hold the hare's safe distance. When no safe path exists the safety
// constraint is dropped for that step; if even that fails, the robot stops.
class AStarPolicy final : public Policy {
 public:
  AStarPolicy(GridMap map, ArenaConfig cfg)
      : map_(std::move(map)), cfg_(cfg) {}
  std::array<Action, 2> act(const ArenaState& state, Team team) override;
  std::string name() const override { return "astar"; }

 private:
  GridMap map_;
  ArenaConfig cfg_;
};

// Greedy controller on a trained network. The output head width selects
// the control mode: 5 = one query per agent, 25 = joint action decode.
class DqnPolicy final : public Policy {
 public:
  DqnPolicy(QNetwork net, GridMap map);
  std::array<Action, 2> act(const ArenaState& state, Team team) override;
  std::string name() const override { return "dqn"; }

 private:
  QNetwork net_;
  GridMap map_;
  Rng rng_;  // untouched at epsilon 0, present for the select_action API
};

// Parses "astar", "random", "stationary" or "dqn:<weights-path>".
std::unique_ptr<Policy> make_policy(const std::string& spec,
                                    const GridMap& map,
                                    const ArenaConfig& cfg);

}  // namespace staghunt
