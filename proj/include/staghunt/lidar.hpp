#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "staghunt/grid_map.hpp"
#include "staghunt/rng.hpp"

namespace staghunt {

// Continuous coordinates are in cell units: cell (x, y) spans
// [x, x+1) x [y, y+1), its center is (x+0.5, y+0.5).

struct LidarBeam {
  double bearing = 0.0;  // radians, strictly increasing over [0, 2pi)
  double range = 0.0;
  bool hit = false;
};

struct LidarScan {
  Eigen::Vector2d origin{0.0, 0.0};
  double max_range = 32.0;
  std::vector<LidarBeam> beams;
};

struct Segment {
  Eigen::Vector2d p1{0.0, 0.0};
  Eigen::Vector2d p2{0.0, 0.0};
};

struct Circle {
  Eigen::Vector2d center{0.0, 0.0};
  double radius = 0.0;
};

struct RobotDisc {
  Eigen::Vector2d center{0.0, 0.0};
  double radius = 0.5;
};

struct DetectionConfig {
  double split_threshold = 0.2;     // max point-to-chord deviation, cells
  int min_points_per_segment = 4;
  double circle_radius_margin = 0.3;
  double robot_radius = 0.5;
  double ally_match_radius = 1.0;
};

// Ray-cast n_beams evenly spaced bearings against wall-cell boundaries and
// robot discs. Beams that reach nothing carry hit=false at max_range.
// Optional Gaussian range jitter is applied to hit beams when
// noise_std > 0. Throws std::invalid_argument when the pose is inside a
// wall cell.
LidarScan simulate_scan(const GridMap& map, const Eigen::Vector2d& pose,
                        int n_beams, double max_range,
                        const std::vector<RobotDisc>& robots,
                        double noise_std = 0.0, Rng* rng = nullptr);

// Cartesian points of the hit beams, scan order preserved.
std::vector<Eigen::Vector2d> scan_points(const LidarScan& scan);

// Split-and-merge style extraction: hit points grouped by beam adjacency
// and range continuity (wrapping across the 0/2pi seam), recursively split
// at the point of maximum chord deviation while it exceeds
// split_threshold. Groups smaller than min_points_per_segment are dropped.
std::vector<Segment> extract_segments(const LidarScan& scan,
                                      const DetectionConfig& cfg);

// Secant-line circle hypothesis: the center sits beyond the segment
// midpoint along the unit normal pointing away from the sensor, displaced
// by circle_radius_margin; radius is half the chord plus the margin.
Circle segment_to_circle(const Segment& seg, const Eigen::Vector2d& sensor,
                         const DetectionConfig& cfg);

// Drops every circle whose center lies inside a wall cell. Centers exactly
// on a cell boundary count as the empty side.
std::vector<Circle> filter_walls(const std::vector<Circle>& circles,
                                 const GridMap& map);

// Union of both sensors' detections: circles near a known ally center are
// discarded, mutually close circles are merged at their centroid, and the
// survivors are snapped to the nearest non-wall cell (row-major order,
// duplicates removed).
std::vector<Position> fuse_views(const std::vector<Circle>& detections_a,
                                 const std::vector<Circle>& detections_b,
                                 const std::vector<Eigen::Vector2d>& ally_positions,
                                 const DetectionConfig& cfg,
                                 const GridMap& map);

// Full two-sensor pipeline: each sensor scans the targets plus the other
// sensor's disc, segments become wall-filtered circles, and both views are
// fused into enemy cells.
std::vector<Position> detect_enemies(const GridMap& map,
                                     const std::array<Eigen::Vector2d, 2>& sensors,
                                     const std::vector<RobotDisc>& targets,
                                     const DetectionConfig& cfg, int n_beams,
                                     double max_range);

}  // namespace staghunt
