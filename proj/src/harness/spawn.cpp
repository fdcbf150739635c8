#include "staghunt/harness/spawn.hpp"

#include <stdexcept>

namespace staghunt {

ArenaState spawn_random(const GridMap& map, const ArenaConfig& cfg, Rng& rng) {
  std::vector<Position> cells = map.empty_cells();
  if (cells.size() < 4) {
    throw std::invalid_argument("spawn_random: map needs at least 4 empty cells");
  }
  constexpr int kMaxAttempts = 10'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // partial Fisher-Yates draw of 4 distinct cells
    for (size_t k = 0; k < 4; ++k) {
      const size_t j = k + rng.uniform_int(cells.size() - k);
      std::swap(cells[k], cells[j]);
    }
    const ArenaState state =
        make_state({cells[0], cells[1], cells[2], cells[3]});
    if (!is_two_v_one(state, Team::Blue, cfg, map) &&
        !is_two_v_one(state, Team::Red, cfg, map)) {
      return state;
    }
  }
  throw std::runtime_error(
      "spawn_random: no placement without an immediate 2v1 found");
}

}  // namespace staghunt
