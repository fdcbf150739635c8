#pragma once

#include "staghunt/arena.hpp"
#include "staghunt/rng.hpp"

namespace staghunt {

// Four distinct uniformly random empty cells, rejection-resampled until
// neither team starts in a 2v1 state. last_seen starts at the spawn
// positions. Throws when the map has fewer than 4 empty cells or no
// acceptable placement is found.
ArenaState spawn_random(const GridMap& map, const ArenaConfig& cfg, Rng& rng);

}  // namespace staghunt
