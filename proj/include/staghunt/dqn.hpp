#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "staghunt/arena.hpp"
#include "staghunt/rewards.hpp"
#include "staghunt/rng.hpp"

namespace staghunt {

// Fully-connected relu MLP, 8 inputs, three hidden layers, linear
// action-value head (5 outputs for per-agent control, 25 for the joint
// controller).
struct QNetwork {
  std::vector<int> dims;                 // layer sizes, input first
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: dims[l+1] x dims[l]
  std::vector<Eigen::VectorXd> biases;   // biases[l]: dims[l+1]

  int input_size() const { return dims.front(); }
  int output_size() const { return dims.back(); }
  size_t layer_count() const { return weights.size(); }

  static QNetwork zeros(const std::vector<int>& dims);
  // He-style uniform init, deterministic for a given rng state.
  static QNetwork random_init(const std::vector<int>& dims, Rng& rng);

  friend bool operator==(const QNetwork&, const QNetwork&) = default;
};

Eigen::VectorXd forward(const QNetwork& net,
                        const Eigen::Ref<const Eigen::VectorXd>& obs);

// Column-per-sample batch forward: X is input_size x batch.
Eigen::MatrixXd forward_batch(const QNetwork& net, const Eigen::MatrixXd& X);

struct Transition {
  Eigen::VectorXd obs;
  int action = 0;
  double reward = 0.0;
  Eigen::VectorXd next_obs;
  bool done = false;
};

// Ring buffer with proportional priorities p^alpha kept in sum/min segment
// trees. New items enter at the running maximum priority so every
// transition is sampled at least once.
class PrioritizedReplayBuffer {
 public:
  explicit PrioritizedReplayBuffer(size_t capacity = 1'000'000,
                                   double alpha = 0.6,
                                   double priority_epsilon = 1e-6);

  void push(Transition t);
  size_t size() const { return size_; }
  size_t capacity() const { return capacity_; }
  double alpha() const { return alpha_; }
  double priority(size_t index) const { return priorities_[index]; }
  const Transition& at(size_t index) const { return items_[index]; }

  struct Sample {
    std::vector<size_t> indices;
    std::vector<double> weights;  // importance weights, max-normalized
  };

  // Stratified proportional sampling; probability of slot i is
  // p_i^alpha / sum_j p_j^alpha. Importance weights are
  // (N * P(i))^-beta_is, normalized by the largest weight in the buffer.
  // Throws std::invalid_argument when fewer than batch_size items are
  // stored.
  Sample sample(size_t batch_size, double beta_is, Rng& rng) const;

  void update_priorities(const std::vector<size_t>& indices,
                         const std::vector<double>& td_abs);

 private:
  void set_priority(size_t index, double p);
  size_t find_prefix(double mass) const;

  size_t capacity_;
  double alpha_;
  double priority_epsilon_;
  double max_priority_ = 1.0;
  size_t next_ = 0;
  size_t size_ = 0;
  std::vector<Transition> items_;
  std::vector<double> priorities_;
  size_t tree_base_;
  std::vector<double> sum_tree_;
  std::vector<double> min_tree_;
};

enum class ModelVariant : int { Model1 = 1, Model2 = 2, Model3 = 3 };

enum class OpponentKind : int { RandomWalk = 0, Stationary = 1 };

struct TrainConfig {
  double gamma = 0.99;
  double learning_rate = 0.01;
  int target_update_every = 1000;  // episodes between target syncs
  double epsilon_start = 0.8;
  double epsilon_end = 0.3;
  double epsilon_decay_fraction = 1.0;  // fraction of episodes spent decaying
  int total_episodes = 20'000;          // desk-scale default
  int batch_size = 32;
  ModelVariant variant = ModelVariant::Model1;
  std::uint64_t seed = 0;

  std::array<int, 3> hidden = {64, 64, 64};
  size_t buffer_capacity = 100'000;  // desk-scale override of the 1e6 default
  double replay_alpha = 0.6;
  double beta_is = 0.4;
  double priority_epsilon = 1e-6;
  double huber_delta = 1.0;
  int episode_max_steps = 100;
  OpponentKind opponent = OpponentKind::RandomWalk;
  int log_every = 100;  // episodes per metrics window
};

int action_count(ModelVariant v);
std::vector<int> network_dims(const TrainConfig& cfg);

// Linear decay from epsilon_start at episode 0 to epsilon_end at the end
// of the decay fraction, constant afterwards.
double epsilon_at(const TrainConfig& cfg, int episode);

// Joint-action codec for the 25-action controller: k = a1 * 5 + a2.
inline int encode_joint(Action a1, Action a2) {
  return static_cast<int>(a1) * kNumActions + static_cast<int>(a2);
}
inline std::pair<Action, Action> decode_joint(int k) {
  return {static_cast<Action>(k / kNumActions),
          static_cast<Action>(k % kNumActions)};
}

// r when done, else r + gamma * max_a Q_target(next_obs, a).
double td_target(const Transition& t, const QNetwork& target_net,
                 double gamma);

struct SgdStats {
  std::vector<double> td_abs;  // |TD error| per batch item, priority refresh
  double loss = 0.0;           // importance-weighted mean Huber loss
};

// One plain-SGD step on the Huber TD loss of the taken actions.
// Importance weights scale per-item gradients. Throws std::runtime_error
// on a non-finite loss.
SgdStats sgd_step(QNetwork& net, const std::vector<Transition>& batch,
                  const std::vector<double>& is_weights,
                  const QNetwork& target_net, const TrainConfig& cfg);

// Epsilon-greedy over forward(net, obs); exact q ties break to the lowest
// action index.
int select_action(const QNetwork& net,
                  const Eigen::Ref<const Eigen::VectorXd>& obs, double epsilon,
                  Rng& rng);

struct MetricsRow {
  int episode = 0;  // last episode of the window (1-based count)
  double mean_reward = 0.0;
  double mean_loss = 0.0;
  double mean_td_error = 0.0;
};

struct TrainResult {
  QNetwork net;
  std::vector<MetricsRow> metrics;
};

// Full training loop for the three model variants. Model1/Model3 drive one
// 5-action network once per agent per step (shared parameters by
// construction); Model2 drives one 25-action joint network. Episodes end
// when either team creates a 2v1 or episode_max_steps elapses.
TrainResult train(const TrainConfig& cfg, const GridMap& map,
                  const ArenaConfig& arena_cfg, const RewardConfig& reward_cfg);

// Versioned little-endian binary: magic "SHDQ", u16 version, u32 layer
// count, per-layer u32 rows/cols, then row-major f64 weights and the bias
// vector per layer. load(save(net)) is bit-exact.
void save_weights(const QNetwork& net, const std::string& path);
QNetwork load_weights(const std::string& path);

void write_metrics_csv(const std::vector<MetricsRow>& metrics,
                       const std::string& path);

}  // namespace staghunt
