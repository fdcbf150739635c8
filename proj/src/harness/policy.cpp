#include "staghunt/harness/policy.hpp"

#include <stdexcept>

#include "staghunt/rewards.hpp"

namespace staghunt {

std::array<Action, 2> AStarPolicy::act(const ArenaState& state, Team team) {
  const ArenaState view = team == Team::Blue ? state : mirrored(state);
  const StagAssignment assignment = assign_stag(view);
  const Position stag = view.seen(assignment.stag);
  const Position hare = view.seen(assignment.hare);

  std::array<Action, 2> out{Action::Stop, Action::Stop};
  const std::array<RobotId, 2> mates{RobotId::Agent1, RobotId::Agent2};
  for (size_t k = 0; k < 2; ++k) {
    PlanRequest req;
    req.start = view.at(mates[k]);
    req.stag = stag;
    req.hare = hare;
    req.attack_range = cfg_.attack_range;
    req.safe_distance = cfg_.safe_distance;

    PlanResult res = plan(map_, req);
    if (!ok(res)) {
      // inside the exclusion zone or boxed out: fall back to an unsafe plan
      req.safe_distance = 0.0;
      res = plan(map_, req);
    }
    if (ok(res)) out[k] = next_action(path_of(res), req.start);
  }
  return out;
}

DqnPolicy::DqnPolicy(QNetwork net, GridMap map)
    : net_(std::move(net)), map_(std::move(map)) {
  if (net_.input_size() != 8) {
    throw std::invalid_argument("DqnPolicy: network must take 8 inputs");
  }
  if (net_.output_size() != kNumActions &&
      net_.output_size() != kNumActions * kNumActions) {
    throw std::invalid_argument(
        "DqnPolicy: network must emit 5 (per-agent) or 25 (joint) action values");
  }
}

std::array<Action, 2> DqnPolicy::act(const ArenaState& state, Team team) {
  const ArenaState view = team == Team::Blue ? state : mirrored(state);
  if (net_.output_size() == kNumActions * kNumActions) {
    const int k =
        select_action(net_, observation(view, RobotId::Agent1, map_), 0.0, rng_);
    const auto [a1, a2] = decode_joint(k);
    return {a1, a2};
  }
  return {static_cast<Action>(select_action(
              net_, observation(view, RobotId::Agent1, map_), 0.0, rng_)),
          static_cast<Action>(select_action(
              net_, observation(view, RobotId::Agent2, map_), 0.0, rng_))};
}

std::unique_ptr<Policy> make_policy(const std::string& spec,
                                    const GridMap& map,
                                    const ArenaConfig& cfg) {
  if (spec == "astar") return std::make_unique<AStarPolicy>(map, cfg);
  if (spec == "random") return std::make_unique<RandomPolicy>();
  if (spec == "stationary") return std::make_unique<StationaryPolicy>();
  if (spec.rfind("dqn:", 0) == 0) {
    const std::string path = spec.substr(4);
    if (path.empty()) {
      throw std::invalid_argument("policy spec: dqn: needs a weights path");
    }
    return std::make_unique<DqnPolicy>(load_weights(path), map);
  }
  throw std::invalid_argument(
      "policy spec: expected astar|random|stationary|dqn:<weights>, got '" +
      spec + "'");
}

}  // namespace staghunt
