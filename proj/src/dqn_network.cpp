#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "staghunt/dqn.hpp"

static_assert(std::endian::native == std::endian::little,
              "weight files are little-endian; big-endian hosts unsupported");

namespace staghunt {

QNetwork QNetwork::zeros(const std::vector<int>& dims) {
  if (dims.size() < 2) {
    throw std::invalid_argument("QNetwork: need at least input and output layers");
  }
  QNetwork net;
  net.dims = dims;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    net.weights.push_back(Eigen::MatrixXd::Zero(dims[l + 1], dims[l]));
    net.biases.push_back(Eigen::VectorXd::Zero(dims[l + 1]));
  }
  return net;
}

QNetwork QNetwork::random_init(const std::vector<int>& dims, Rng& rng) {
  QNetwork net = zeros(dims);
  for (size_t l = 0; l < net.weights.size(); ++l) {
    const double bound = std::sqrt(6.0 / dims[l]);  // He-uniform for relu
    for (Eigen::Index i = 0; i < net.weights[l].rows(); ++i) {
      for (Eigen::Index j = 0; j < net.weights[l].cols(); ++j) {
        net.weights[l](i, j) = rng.uniform(-bound, bound);
      }
    }
  }
  return net;
}

Eigen::VectorXd forward(const QNetwork& net,
                        const Eigen::Ref<const Eigen::VectorXd>& obs) {
  if (obs.size() != net.input_size()) {
    throw std::invalid_argument("forward: observation size mismatch");
  }
  Eigen::VectorXd a = obs;
  for (size_t l = 0; l < net.weights.size(); ++l) {
    Eigen::VectorXd z = net.weights[l] * a + net.biases[l];
    a = l + 1 < net.weights.size() ? z.cwiseMax(0.0).eval() : std::move(z);
  }
  return a;
}

Eigen::MatrixXd forward_batch(const QNetwork& net, const Eigen::MatrixXd& X) {
  if (X.rows() != net.input_size()) {
    throw std::invalid_argument("forward_batch: observation size mismatch");
  }
  Eigen::MatrixXd a = X;
  for (size_t l = 0; l < net.weights.size(); ++l) {
    Eigen::MatrixXd z = (net.weights[l] * a).colwise() + net.biases[l];
    a = l + 1 < net.weights.size() ? z.cwiseMax(0.0).eval() : std::move(z);
  }
  return a;
}

double td_target(const Transition& t, const QNetwork& target_net,
                 double gamma) {
  if (t.done) return t.reward;
  return t.reward + gamma * forward(target_net, t.next_obs).maxCoeff();
}

namespace {

double huber(double e, double delta) {
  const double a = std::abs(e);
  if (a <= delta) return 0.5 * e * e;
  return delta * (a - 0.5 * delta);
}

double huber_grad(double e, double delta) {
  return std::clamp(e, -delta, delta);
}

}  // namespace

SgdStats sgd_step(QNetwork& net, const std::vector<Transition>& batch,
                  const std::vector<double>& is_weights,
                  const QNetwork& target_net, const TrainConfig& cfg) {
  const size_t n = batch.size();
  if (n == 0) throw std::invalid_argument("sgd_step: empty batch");
  if (is_weights.size() != n) {
    throw std::invalid_argument("sgd_step: weight/batch size mismatch");
  }

  const size_t layers = net.weights.size();
  const int in_dim = net.input_size();

  Eigen::MatrixXd X(in_dim, n);
  Eigen::MatrixXd Xn(in_dim, n);
  for (size_t i = 0; i < n; ++i) {
    X.col(i) = batch[i].obs;
    Xn.col(i) = batch[i].next_obs;
  }

  // bootstrap targets from the frozen network
  const Eigen::MatrixXd q_next = forward_batch(target_net, Xn);
  Eigen::VectorXd y(n);
  for (size_t i = 0; i < n; ++i) {
    y(i) = batch[i].done
               ? batch[i].reward
               : batch[i].reward + cfg.gamma * q_next.col(i).maxCoeff();
  }

  // forward pass, keeping pre- and post-activations for backprop
  std::vector<Eigen::MatrixXd> acts(layers + 1);
  std::vector<Eigen::MatrixXd> pre(layers);
  acts[0] = X;
  for (size_t l = 0; l < layers; ++l) {
    pre[l] = (net.weights[l] * acts[l]).colwise() + net.biases[l];
    acts[l + 1] = l + 1 < layers ? pre[l].cwiseMax(0.0).eval() : pre[l];
  }
  const Eigen::MatrixXd& q = acts[layers];

  SgdStats stats;
  stats.td_abs.resize(n);
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(net.output_size(), n);
  double loss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const int a = batch[i].action;
    if (a < 0 || a >= net.output_size()) {
      throw std::invalid_argument("sgd_step: action index out of range");
    }
    const double e = q(a, i) - y(i);
    stats.td_abs[i] = std::abs(e);
    loss += is_weights[i] * huber(e, cfg.huber_delta);
    delta(a, i) = is_weights[i] * huber_grad(e, cfg.huber_delta) /
                  static_cast<double>(n);
  }
  stats.loss = loss / static_cast<double>(n);
  if (!std::isfinite(stats.loss)) {
    throw std::runtime_error("sgd_step: non-finite loss");
  }

  // backprop; gradients flow only through the taken action's output
  for (size_t l = layers; l-- > 0;) {
    const Eigen::MatrixXd grad_w = delta * acts[l].transpose();
    const Eigen::VectorXd grad_b = delta.rowwise().sum();
    if (l > 0) {
      delta = (net.weights[l].transpose() * delta)
                  .cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
    net.weights[l] -= cfg.learning_rate * grad_w;
    net.biases[l] -= cfg.learning_rate * grad_b;
  }
  return stats;
}

int select_action(const QNetwork& net,
                  const Eigen::Ref<const Eigen::VectorXd>& obs, double epsilon,
                  Rng& rng) {
  if (epsilon > 0.0 && rng.uniform() < epsilon) {
    return static_cast<int>(rng.uniform_int(net.output_size()));
  }
  const Eigen::VectorXd q = forward(net, obs);
  int best = 0;
  for (int a = 1; a < q.size(); ++a) {
    if (q(a) > q(best)) best = a;  // ties keep the lowest index
  }
  return best;
}

namespace {

constexpr char kMagic[4] = {'S', 'H', 'D', 'Q'};
constexpr std::uint16_t kFormatVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("weight file: truncated");
  return v;
}

}  // namespace

void save_weights(const QNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("weight file: cannot open for writing: " + path);
  out.write(kMagic, 4);
  write_raw(out, kFormatVersion);
  write_raw(out, static_cast<std::uint32_t>(net.weights.size()));
  for (size_t l = 0; l < net.weights.size(); ++l) {
    write_raw(out, static_cast<std::uint32_t>(net.weights[l].rows()));
    write_raw(out, static_cast<std::uint32_t>(net.weights[l].cols()));
  }
  for (size_t l = 0; l < net.weights.size(); ++l) {
    const Eigen::MatrixXd& w = net.weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        write_raw(out, w(i, j));
      }
    }
    for (Eigen::Index i = 0; i < net.biases[l].size(); ++i) {
      write_raw(out, net.biases[l](i));
    }
  }
  if (!out) throw std::runtime_error("weight file: write failed: " + path);
}

QNetwork load_weights(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("weight file: cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("weight file: bad magic");
  }
  const auto version = read_raw<std::uint16_t>(in);
  if (version != kFormatVersion) {
    throw std::runtime_error("weight file: unsupported version " +
                             std::to_string(version));
  }
  const auto layer_count = read_raw<std::uint32_t>(in);
  if (layer_count == 0 || layer_count > 64) {
    throw std::runtime_error("weight file: implausible layer count");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> shapes;
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    const auto rows = read_raw<std::uint32_t>(in);
    const auto cols = read_raw<std::uint32_t>(in);
    if (rows == 0 || cols == 0 || rows > 1'000'000 || cols > 1'000'000) {
      throw std::runtime_error("weight file: implausible layer shape");
    }
    if (!shapes.empty() && shapes.back().first != cols) {
      throw std::runtime_error("weight file: inconsistent layer dimensions");
    }
    shapes.emplace_back(rows, cols);
  }

  std::vector<int> dims;
  dims.push_back(static_cast<int>(shapes[0].second));
  for (const auto& [rows, cols] : shapes) dims.push_back(static_cast<int>(rows));

  QNetwork net = QNetwork::zeros(dims);
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    Eigen::MatrixXd& w = net.weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) = read_raw<double>(in);
      }
    }
    for (Eigen::Index i = 0; i < net.biases[l].size(); ++i) {
      net.biases[l](i) = read_raw<double>(in);
    }
  }
  return net;
}

}  // namespace staghunt
