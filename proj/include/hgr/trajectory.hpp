#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hgr/landmark.hpp"

namespace hgr {

struct TrajectoryPoint {
    Vec3 position{};
    std::uint64_t frame_id = 0;

    bool operator==(const TrajectoryPoint&) const = default;
};

/// Per-axis movement sign (x, y, z) in {-1, 0, +1}; y is up-positive.
struct Direction {
    std::array<std::int8_t, 3> axis{};

    bool stationary() const noexcept { return axis[0] == 0 && axis[1] == 0 && axis[2] == 0; }
    /// True if every moving axis of *this agrees with `expected`.
    bool compatible_with(const Direction& expected) const noexcept;
    std::string to_string() const;

    bool operator==(const Direction&) const = default;
};

struct QuantizedTrajectory {
    std::vector<Direction> steps;

    bool operator==(const QuantizedTrajectory&) const = default;
};

/// Encoded trajectory plus the mean keyframe step length it was quantized
/// against, which calibrates the deadzone at inference.
struct EncodedTrajectory {
    QuantizedTrajectory trajectory;
    double step_length = 0.0;
};

/// Distance on (x, y, z * z_weight).
double weighted_distance(const Vec3& a, const Vec3& b, double z_weight = 1.0);

/// Hand position used for trajectories: centroid of the primary hand with y
/// negated so that up on screen is positive. Precondition: !frame.empty().
Vec3 trajectory_position(const LandmarkFrame& frame);

/// Centroid trajectory of all frames that contain a hand.
std::vector<TrajectoryPoint> trajectory_from_frames(std::span<const LandmarkFrame> frames);

/// Single left-to-right pass dropping interior point i when
/// dist(prev, next) < min(dist(prev, i), dist(i, next)), with prev being the
/// last surviving point. Endpoints always survive.
std::vector<TrajectoryPoint> remove_outliers(std::span<const TrajectoryPoint> points, double z_weight = 1.0);

/// Indices of k keyframes that split the cumulative arc length evenly,
/// always including the first and last point. Indices are strictly
/// increasing when there are at least k points. Throws DegenerateTrajectory
/// for zero arc length.
std::vector<std::size_t> keyframe_indices(std::span<const TrajectoryPoint> points, std::size_t k, double z_weight = 1.0);

std::vector<TrajectoryPoint> extract_keyframes(std::span<const TrajectoryPoint> points, std::size_t k,
                                               double z_weight = 1.0);

/// Cumulative arc length at each point.
std::vector<double> cumulative_arc(std::span<const TrajectoryPoint> points, double z_weight = 1.0);

/// Sign per axis of (to - from), zero inside +-deadzone * scale. The z
/// displacement is multiplied by z_weight first.
Direction quantize_step(const Vec3& from, const Vec3& to, double deadzone, double scale = 1.0, double z_weight = 1.0);

/// remove_outliers -> extract_keyframes -> quantize consecutive keyframes
/// against deadzone * (mean keyframe step length). Yields k - 1 steps.
EncodedTrajectory encode_trajectory(std::span<const TrajectoryPoint> points, std::size_t k, double deadzone,
                                    double z_weight = 1.0);

}  // namespace hgr
