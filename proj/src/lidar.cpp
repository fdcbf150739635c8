#include "staghunt/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace staghunt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// range discontinuity that starts a new point group
constexpr double kGroupBreakRange = 1.0;

// Amanatides & Woo traversal; returns the ray parameter at which the ray
// first enters a wall cell, or +inf if it leaves the grid or exceeds
// t_limit first.
double ray_to_walls(const GridMap& map, const Eigen::Vector2d& o,
                    const Eigen::Vector2d& d, double t_limit) {
  int cx = static_cast<int>(std::floor(o.x()));
  int cy = static_cast<int>(std::floor(o.y()));

  const int step_x = d.x() > 0 ? 1 : -1;
  const int step_y = d.y() > 0 ? 1 : -1;
  const double t_delta_x = d.x() != 0.0 ? std::abs(1.0 / d.x()) : kInf;
  const double t_delta_y = d.y() != 0.0 ? std::abs(1.0 / d.y()) : kInf;

  double t_max_x = kInf;
  if (d.x() != 0.0) {
    const double next = d.x() > 0 ? std::floor(o.x()) + 1.0 : std::floor(o.x());
    t_max_x = (next - o.x()) / d.x();
  }
  double t_max_y = kInf;
  if (d.y() != 0.0) {
    const double next = d.y() > 0 ? std::floor(o.y()) + 1.0 : std::floor(o.y());
    t_max_y = (next - o.y()) / d.y();
  }

  while (true) {
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      t_max_x += t_delta_x;
      cx += step_x;
    } else {
      t = t_max_y;
      t_max_y += t_delta_y;
      cy += step_y;
    }
    if (t > t_limit) return kInf;
    if (!map.in_bounds(cx, cy)) return kInf;
    if (map.at(cx, cy) == CellKind::Wall) return t;
  }
}

double ray_to_disc(const Eigen::Vector2d& o, const Eigen::Vector2d& d,
                   const RobotDisc& disc) {
  const Eigen::Vector2d oc = o - disc.center;
  const double b = oc.dot(d);
  const double c = oc.squaredNorm() - disc.radius * disc.radius;
  const double disc_b = b * b - c;
  if (disc_b < 0.0) return kInf;
  const double sq = std::sqrt(disc_b);
  const double t0 = -b - sq;
  if (t0 > 0.0) return t0;
  const double t1 = -b + sq;
  if (t1 > 0.0) return t1;
  return kInf;
}

}  // namespace

LidarScan simulate_scan(const GridMap& map, const Eigen::Vector2d& pose,
                        int n_beams, double max_range,
                        const std::vector<RobotDisc>& robots, double noise_std,
                        Rng* rng) {
  const int px = static_cast<int>(std::floor(pose.x()));
  const int py = static_cast<int>(std::floor(pose.y()));
  if (map.in_bounds(px, py) && map.at(px, py) == CellKind::Wall) {
    throw std::invalid_argument("simulate_scan: pose inside a wall cell");
  }

  LidarScan scan;
  scan.origin = pose;
  scan.max_range = max_range;
  scan.beams.reserve(n_beams);
  for (int k = 0; k < n_beams; ++k) {
    const double bearing = 2.0 * M_PI * k / n_beams;
    const Eigen::Vector2d dir(std::cos(bearing), std::sin(bearing));
    double t = ray_to_walls(map, pose, dir, max_range);
    for (const RobotDisc& r : robots) {
      t = std::min(t, ray_to_disc(pose, dir, r));
    }
    LidarBeam beam;
    beam.bearing = bearing;
    beam.hit = t <= max_range;
    beam.range = beam.hit ? t : max_range;
    if (beam.hit && noise_std > 0.0 && rng != nullptr) {
      // Box-Muller, self-contained for cross-platform determinism
      const double u1 = std::max(rng->uniform(), 1e-300);
      const double u2 = rng->uniform();
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      beam.range = std::clamp(beam.range + noise_std * z, 0.0, max_range);
    }
    scan.beams.push_back(beam);
  }
  return scan;
}

std::vector<Eigen::Vector2d> scan_points(const LidarScan& scan) {
  std::vector<Eigen::Vector2d> pts;
  for (const LidarBeam& b : scan.beams) {
    if (!b.hit) continue;
    pts.push_back(scan.origin + b.range * Eigen::Vector2d(std::cos(b.bearing),
                                                          std::sin(b.bearing)));
  }
  return pts;
}

namespace {

double chord_deviation(const std::vector<Eigen::Vector2d>& pts, size_t i,
                       size_t j, size_t k) {
  const Eigen::Vector2d chord = pts[j] - pts[i];
  const double len = chord.norm();
  if (len < 1e-12) return (pts[k] - pts[i]).norm();
  const Eigen::Vector2d v = pts[k] - pts[i];
  return std::abs(chord.x() * v.y() - chord.y() * v.x()) / len;
}

void split_group(const std::vector<Eigen::Vector2d>& pts, size_t i, size_t j,
                 const DetectionConfig& cfg, std::vector<Segment>& out) {
  if (j - i + 1 < static_cast<size_t>(cfg.min_points_per_segment)) return;
  size_t worst = i;
  double worst_dev = 0.0;
  for (size_t k = i + 1; k < j; ++k) {
    const double dev = chord_deviation(pts, i, j, k);
    if (dev > worst_dev) {
      worst_dev = dev;
      worst = k;
    }
  }
  if (worst_dev > cfg.split_threshold && worst > i && worst < j) {
    split_group(pts, i, worst, cfg, out);
    split_group(pts, worst, j, cfg, out);
    return;
  }
  out.push_back({pts[i], pts[j]});
}

}  // namespace

std::vector<Segment> extract_segments(const LidarScan& scan,
                                      const DetectionConfig& cfg) {
  // gather hit points with their beam indices
  std::vector<int> beam_index;
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> ranges;
  for (size_t k = 0; k < scan.beams.size(); ++k) {
    const LidarBeam& b = scan.beams[k];
    if (!b.hit) continue;
    beam_index.push_back(static_cast<int>(k));
    pts.push_back(scan.origin + b.range * Eigen::Vector2d(std::cos(b.bearing),
                                                          std::sin(b.bearing)));
    ranges.push_back(b.range);
  }
  if (pts.empty()) return {};

  // contiguous runs of adjacent beams with continuous range
  std::vector<std::pair<size_t, size_t>> groups;
  size_t begin = 0;
  for (size_t k = 1; k < pts.size(); ++k) {
    const bool adjacent = beam_index[k] == beam_index[k - 1] + 1;
    const bool continuous = std::abs(ranges[k] - ranges[k - 1]) <= kGroupBreakRange;
    if (!adjacent || !continuous) {
      groups.emplace_back(begin, k - 1);
      begin = k;
    }
  }
  groups.emplace_back(begin, pts.size() - 1);

  // merge the last group into the first across the 0/2pi seam
  if (groups.size() > 1) {
    const bool seam_adjacent =
        beam_index.front() == 0 &&
        beam_index.back() == static_cast<int>(scan.beams.size()) - 1;
    const bool seam_continuous =
        std::abs(ranges.front() - ranges.back()) <= kGroupBreakRange;
    if (seam_adjacent && seam_continuous) {
      auto [lb, le] = groups.back();
      groups.pop_back();
      // rotate so the wrapped run is contiguous in the point arrays
      std::vector<Eigen::Vector2d> rot(pts.begin() + lb, pts.end());
      rot.insert(rot.end(), pts.begin(), pts.begin() + groups.front().second + 1);
      std::vector<Segment> out;
      split_group(rot, 0, rot.size() - 1, cfg, out);
      for (size_t gi = 1; gi < groups.size(); ++gi) {
        split_group(pts, groups[gi].first, groups[gi].second, cfg, out);
      }
      return out;
    }
  }

  std::vector<Segment> out;
  for (const auto& [gb, ge] : groups) split_group(pts, gb, ge, cfg, out);
  return out;
}

Circle segment_to_circle(const Segment& seg, const Eigen::Vector2d& sensor,
                         const DetectionConfig& cfg) {
  const Eigen::Vector2d mid = 0.5 * (seg.p1 + seg.p2);
  const Eigen::Vector2d chord = seg.p2 - seg.p1;
  Eigen::Vector2d normal(-chord.y(), chord.x());
  const double len = normal.norm();
  if (len < 1e-12) {
    normal = mid - sensor;
    normal.normalize();
  } else {
    normal /= len;
    if (normal.dot(mid - sensor) < 0.0) normal = -normal;
  }
  Circle c;
  c.center = mid + cfg.circle_radius_margin * normal;
  c.radius = 0.5 * chord.norm() + cfg.circle_radius_margin;
  return c;
}

namespace {

bool center_inside_wall(const GridMap& map, const Eigen::Vector2d& c) {
  const auto candidates_1d = [](double v) {
    std::vector<int> out;
    const double f = std::floor(v);
    if (v == f) out.push_back(static_cast<int>(f) - 1);
    out.push_back(static_cast<int>(f));
    return out;
  };
  bool any_in_bounds = false;
  for (int x : candidates_1d(c.x())) {
    for (int y : candidates_1d(c.y())) {
      if (!map.in_bounds(x, y)) continue;
      any_in_bounds = true;
      if (map.at(x, y) == CellKind::Empty) return false;
    }
  }
  return any_in_bounds;
}

}  // namespace

std::vector<Circle> filter_walls(const std::vector<Circle>& circles,
                                 const GridMap& map) {
  std::vector<Circle> kept;
  for (const Circle& c : circles) {
    if (!center_inside_wall(map, c.center)) kept.push_back(c);
  }
  return kept;
}

namespace {

Position snap_to_free_cell(const GridMap& map, const Eigen::Vector2d& p) {
  Position best{0, 0};
  double best_d = kInf;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map.at(x, y) == CellKind::Wall) continue;
      const double dx = p.x() - (x + 0.5);
      const double dy = p.y() - (y + 0.5);
      const double d = dx * dx + dy * dy;
      if (d < best_d) {
        best_d = d;
        best = {x, y};
      }
    }
  }
  return best;
}

}  // namespace

std::vector<Position> fuse_views(const std::vector<Circle>& detections_a,
                                 const std::vector<Circle>& detections_b,
                                 const std::vector<Eigen::Vector2d>& ally_positions,
                                 const DetectionConfig& cfg,
                                 const GridMap& map) {
  std::vector<Circle> pool;
  for (const auto& c : detections_a) pool.push_back(c);
  for (const auto& c : detections_b) pool.push_back(c);

  // discard circles explained by a known ally
  std::vector<Circle> unknown;
  for (const Circle& c : pool) {
    bool ally = false;
    for (const Eigen::Vector2d& a : ally_positions) {
      if ((c.center - a).norm() <= cfg.ally_match_radius) {
        ally = true;
        break;
      }
    }
    if (!ally) unknown.push_back(c);
  }

  // merge mutually close detections (single-link clusters)
  std::vector<int> cluster(unknown.size());
  std::iota(cluster.begin(), cluster.end(), 0);
  const auto find = [&](int i) {
    while (cluster[i] != i) i = cluster[i] = cluster[cluster[i]];
    return i;
  };
  for (size_t i = 0; i < unknown.size(); ++i) {
    for (size_t j = i + 1; j < unknown.size(); ++j) {
      if ((unknown[i].center - unknown[j].center).norm() <
          cfg.ally_match_radius) {
        cluster[find(static_cast<int>(i))] = find(static_cast<int>(j));
      }
    }
  }

  std::vector<Position> cells;
  for (size_t root = 0; root < unknown.size(); ++root) {
    if (find(static_cast<int>(root)) != static_cast<int>(root)) continue;
    Eigen::Vector2d centroid(0.0, 0.0);
    int count = 0;
    for (size_t i = 0; i < unknown.size(); ++i) {
      if (find(static_cast<int>(i)) == static_cast<int>(root)) {
        centroid += unknown[i].center;
        ++count;
      }
    }
    centroid /= count;
    cells.push_back(snap_to_free_cell(map, centroid));
  }

  std::sort(cells.begin(), cells.end(), row_major_less);
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::vector<Position> detect_enemies(const GridMap& map,
                                     const std::array<Eigen::Vector2d, 2>& sensors,
                                     const std::vector<RobotDisc>& targets,
                                     const DetectionConfig& cfg, int n_beams,
                                     double max_range) {
  std::array<std::vector<Circle>, 2> views;
  for (int s = 0; s < 2; ++s) {
    std::vector<RobotDisc> visible = targets;
    visible.push_back({sensors[1 - s], cfg.robot_radius});
    const LidarScan scan =
        simulate_scan(map, sensors[s], n_beams, max_range, visible);
    std::vector<Circle> circles;
    for (const Segment& seg : extract_segments(scan, cfg)) {
      circles.push_back(segment_to_circle(seg, sensors[s], cfg));
    }
    views[s] = filter_walls(circles, map);
  }
  return fuse_views(views[0], views[1],
                    {sensors[0], sensors[1]}, cfg, map);
}

}  // namespace staghunt
