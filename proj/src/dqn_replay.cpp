#include <cmath>
#include <limits>
#include <stdexcept>

#include "staghunt/dqn.hpp"

namespace staghunt {

namespace {

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

PrioritizedReplayBuffer::PrioritizedReplayBuffer(size_t capacity, double alpha,
                                                 double priority_epsilon)
    : capacity_(capacity),
      alpha_(alpha),
      priority_epsilon_(priority_epsilon),
      tree_base_(next_pow2(std::max<size_t>(capacity, 1))) {
  if (capacity == 0) throw std::invalid_argument("replay: capacity must be > 0");
  if (alpha < 0.0) throw std::invalid_argument("replay: alpha must be >= 0");
  if (priority_epsilon <= 0.0) {
    throw std::invalid_argument("replay: priority epsilon must be > 0");
  }
  sum_tree_.assign(2 * tree_base_, 0.0);
  min_tree_.assign(2 * tree_base_, std::numeric_limits<double>::infinity());
}

void PrioritizedReplayBuffer::set_priority(size_t index, double p) {
  priorities_[index] = p;
  const double v = std::pow(p, alpha_);
  size_t node = tree_base_ + index;
  sum_tree_[node] = v;
  min_tree_[node] = v;
  for (node >>= 1; node >= 1; node >>= 1) {
    sum_tree_[node] = sum_tree_[2 * node] + sum_tree_[2 * node + 1];
    min_tree_[node] = std::min(min_tree_[2 * node], min_tree_[2 * node + 1]);
  }
}

void PrioritizedReplayBuffer::push(Transition t) {
  const size_t index = next_;
  if (size_ < capacity_) {
    items_.push_back(std::move(t));
    priorities_.push_back(0.0);
    ++size_;
  } else {
    items_[index] = std::move(t);  // ring overwrite of the oldest slot
  }
  next_ = (next_ + 1) % capacity_;
  set_priority(index, max_priority_);
}

size_t PrioritizedReplayBuffer::find_prefix(double mass) const {
  size_t node = 1;
  while (node < tree_base_) {
    const size_t left = 2 * node;
    if (mass < sum_tree_[left]) {
      node = left;
    } else {
      mass -= sum_tree_[left];
      node = left + 1;
    }
  }
  size_t index = node - tree_base_;
  if (index >= size_) index = size_ - 1;  // fp edge at mass ~= total
  return index;
}

PrioritizedReplayBuffer::Sample PrioritizedReplayBuffer::sample(
    size_t batch_size, double beta_is, Rng& rng) const {
  if (batch_size == 0) throw std::invalid_argument("replay: batch_size must be > 0");
  if (size_ < batch_size) {
    throw std::invalid_argument("replay: buffer underfull for requested batch");
  }
  const double total = sum_tree_[1];
  const double n = static_cast<double>(size_);
  // largest importance weight in the buffer comes from the smallest priority
  const double min_prob = min_tree_[1] / total;
  const double max_weight = std::pow(n * min_prob, -beta_is);

  Sample out;
  out.indices.resize(batch_size);
  out.weights.resize(batch_size);
  const double seg = total / static_cast<double>(batch_size);
  for (size_t k = 0; k < batch_size; ++k) {
    const double mass = (static_cast<double>(k) + rng.uniform()) * seg;
    const size_t idx = find_prefix(mass);
    out.indices[k] = idx;
    const double prob = sum_tree_[tree_base_ + idx] / total;
    out.weights[k] = std::pow(n * prob, -beta_is) / max_weight;
  }
  return out;
}

void PrioritizedReplayBuffer::update_priorities(
    const std::vector<size_t>& indices, const std::vector<double>& td_abs) {
  if (indices.size() != td_abs.size()) {
    throw std::invalid_argument("replay: index/priority size mismatch");
  }
  for (size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= size_) {
      throw std::invalid_argument("replay: priority index out of range");
    }
    const double p = td_abs[k] + priority_epsilon_;
    max_priority_ = std::max(max_priority_, p);
    set_priority(indices[k], p);
  }
}

}  // namespace staghunt
