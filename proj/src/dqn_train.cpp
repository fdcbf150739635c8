#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "staghunt/dqn.hpp"
#include "staghunt/harness/spawn.hpp"

namespace staghunt {

int action_count(ModelVariant v) {
  return v == ModelVariant::Model2 ? kNumActions * kNumActions : kNumActions;
}

std::vector<int> network_dims(const TrainConfig& cfg) {
  return {8, cfg.hidden[0], cfg.hidden[1], cfg.hidden[2],
          action_count(cfg.variant)};
}

double epsilon_at(const TrainConfig& cfg, int episode) {
  const double decay_span =
      cfg.epsilon_decay_fraction * static_cast<double>(cfg.total_episodes);
  if (decay_span <= 0.0) return cfg.epsilon_end;
  const double t = std::min(1.0, static_cast<double>(episode) / decay_span);
  return cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * t;
}

namespace {

struct WindowStats {
  double reward_sum = 0.0;
  int episodes = 0;
  double loss_sum = 0.0;
  double td_sum = 0.0;
  long long sgd_steps = 0;

  void flush(std::vector<MetricsRow>& rows, int episode) {
    MetricsRow row;
    row.episode = episode;
    row.mean_reward = episodes > 0 ? reward_sum / episodes : 0.0;
    row.mean_loss = sgd_steps > 0 ? loss_sum / sgd_steps : 0.0;
    row.mean_td_error = sgd_steps > 0 ? td_sum / sgd_steps : 0.0;
    rows.push_back(row);
    *this = WindowStats{};
  }
};

}  // namespace

TrainResult train(const TrainConfig& cfg, const GridMap& map,
                  const ArenaConfig& arena_cfg,
                  const RewardConfig& reward_cfg) {
  Rng master(cfg.seed);
  Rng init_rng = master.fork(1);
  Rng env_rng = master.fork(2);
  Rng explore_rng = master.fork(3);
  Rng replay_rng = master.fork(4);

  TrainResult result;
  result.net = QNetwork::random_init(network_dims(cfg), init_rng);
  QNetwork target = result.net;
  PrioritizedReplayBuffer buffer(cfg.buffer_capacity, cfg.replay_alpha,
                                 cfg.priority_epsilon);

  const bool joint = cfg.variant == ModelVariant::Model2;
  const bool sparse = cfg.variant == ModelVariant::Model3;
  WindowStats window;

  for (int ep = 0; ep < cfg.total_episodes; ++ep) {
    const double eps = epsilon_at(cfg, ep);
    ArenaState state = spawn_random(map, arena_cfg, env_rng);
    double ep_reward1 = 0.0;
    double ep_reward2 = 0.0;

    for (int t = 0; t < cfg.episode_max_steps; ++t) {
      const StagAssignment assignment = assign_stag(state);
      const Observation obs1 = observation(state, RobotId::Agent1, map);
      const Observation obs2 = observation(state, RobotId::Agent2, map);

      JointAction actions{};
      int joint_code = 0;
      if (joint) {
        joint_code = select_action(result.net, obs1, eps, explore_rng);
        const auto [a1, a2] = decode_joint(joint_code);
        actions[0] = a1;
        actions[1] = a2;
      } else {
        actions[0] = static_cast<Action>(
            select_action(result.net, obs1, eps, explore_rng));
        actions[1] = static_cast<Action>(
            select_action(result.net, obs2, eps, explore_rng));
      }
      for (RobotId enemy : team_robots(Team::Red)) {
        actions[static_cast<int>(enemy)] =
            cfg.opponent == OpponentKind::RandomWalk
                ? static_cast<Action>(env_rng.uniform_int(kNumActions))
                : Action::Stop;
      }

      const ArenaState next = step(state, actions, map, arena_cfg);
      const bool terminal_2v1 =
          is_two_v_one(next, Team::Blue, arena_cfg, map) ||
          is_two_v_one(next, Team::Red, arena_cfg, map);
      const bool done = terminal_2v1 || t + 1 >= cfg.episode_max_steps;

      const auto bonus = coop_bonus(next, assignment, reward_cfg, map);
      double rew1, rew2;
      if (sparse) {
        rew1 = sparse_reward(next, RobotId::Agent1, assignment, reward_cfg, map);
        rew2 = sparse_reward(next, RobotId::Agent2, assignment, reward_cfg, map);
      } else {
        rew1 = r2(next, RobotId::Agent1, assignment, reward_cfg) + bonus.first;
        rew2 = r2(next, RobotId::Agent2, assignment, reward_cfg) + bonus.second;
      }
      ep_reward1 += rew1;
      ep_reward2 += rew2;

      if (joint) {
        Transition tr;
        tr.obs = obs1;
        tr.action = joint_code;
        tr.reward = rew1 + rew2;  // joint controller sums both agents
        tr.next_obs = observation(next, RobotId::Agent1, map);
        tr.done = done;
        buffer.push(std::move(tr));
      } else {
        Transition tr1{obs1, static_cast<int>(actions[0]), rew1,
                       observation(next, RobotId::Agent1, map), done};
        Transition tr2{obs2, static_cast<int>(actions[1]), rew2,
                       observation(next, RobotId::Agent2, map), done};
        buffer.push(std::move(tr1));
        buffer.push(std::move(tr2));
      }

      if (buffer.size() >= static_cast<size_t>(cfg.batch_size)) {
        const auto smp =
            buffer.sample(cfg.batch_size, cfg.beta_is, replay_rng);
        std::vector<Transition> batch;
        batch.reserve(smp.indices.size());
        for (size_t idx : smp.indices) batch.push_back(buffer.at(idx));
        const SgdStats stats =
            sgd_step(result.net, batch, smp.weights, target, cfg);
        buffer.update_priorities(smp.indices, stats.td_abs);
        window.loss_sum += stats.loss;
        double td_mean = 0.0;
        for (double v : stats.td_abs) td_mean += v;
        window.td_sum += td_mean / stats.td_abs.size();
        ++window.sgd_steps;
      }

      state = next;
      if (done) break;
    }

    window.reward_sum += 0.5 * (ep_reward1 + ep_reward2);
    ++window.episodes;
    if (cfg.target_update_every > 0 &&
        (ep + 1) % cfg.target_update_every == 0) {
      target = result.net;
    }
    if (cfg.log_every > 0 && (ep + 1) % cfg.log_every == 0) {
      window.flush(result.metrics, ep + 1);
    }
  }
  if (window.episodes > 0) {
    window.flush(result.metrics, cfg.total_episodes);
  }
  return result;
}

void write_metrics_csv(const std::vector<MetricsRow>& metrics,
                       const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("metrics csv: cannot open: " + path);
  out << "episode,mean_reward,mean_loss,mean_td_error\n";
  char buf[128];
  for (const MetricsRow& row : metrics) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", row.episode,
                  row.mean_reward, row.mean_loss, row.mean_td_error);
    out << buf;
  }
}

}  // namespace staghunt
