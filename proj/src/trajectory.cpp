#include "hgr/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgr/error.hpp"

namespace hgr {

bool Direction::compatible_with(const Direction& expected) const noexcept {
    for (std::size_t a = 0; a < 3; ++a)
        if (axis[a] != 0 && axis[a] != expected.axis[a]) return false;
    return true;
}

std::string Direction::to_string() const {
    std::string s = "(";
    for (std::size_t a = 0; a < 3; ++a) {
        if (a) s += ',';
        s += axis[a] > 0 ? '+' : axis[a] < 0 ? '-' : '0';
    }
    return s + ")";
}

double weighted_distance(const Vec3& a, const Vec3& b, double z_weight) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = (a[2] - b[2]) * z_weight;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Vec3 trajectory_position(const LandmarkFrame& frame) {
    Vec3 c = frame.primary_hand().centroid();
    c[1] = -c[1];
    return c;
}

std::vector<TrajectoryPoint> trajectory_from_frames(std::span<const LandmarkFrame> frames) {
    std::vector<TrajectoryPoint> out;
    for (const auto& f : frames)
        if (!f.empty()) out.push_back({trajectory_position(f), f.frame_id});
    return out;
}

std::vector<TrajectoryPoint> remove_outliers(std::span<const TrajectoryPoint> points, double z_weight) {
    if (points.size() <= 2) return {points.begin(), points.end()};
    std::vector<TrajectoryPoint> kept;
    kept.reserve(points.size());
    kept.push_back(points.front());
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        const Vec3& prev = kept.back().position;
        const Vec3& cur = points[i].position;
        const Vec3& next = points[i + 1].position;
        const double skip = weighted_distance(prev, next, z_weight);
        const double via = std::min(weighted_distance(prev, cur, z_weight), weighted_distance(cur, next, z_weight));
        if (!(skip < via)) kept.push_back(points[i]);
    }
    kept.push_back(points.back());
    return kept;
}

std::vector<double> cumulative_arc(std::span<const TrajectoryPoint> points, double z_weight) {
    std::vector<double> cum(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i)
        cum[i] = cum[i - 1] + weighted_distance(points[i - 1].position, points[i].position, z_weight);
    return cum;
}

std::vector<std::size_t> keyframe_indices(std::span<const TrajectoryPoint> points, std::size_t k, double z_weight) {
    if (k < 2) throw std::invalid_argument("at least two keyframes are required");
    if (points.size() < 2) throw DegenerateTrajectory();
    const auto cum = cumulative_arc(points, z_weight);
    const double total = cum.back();
    if (!(total > 0.0)) throw DegenerateTrajectory();

    const std::size_t n = points.size();
    const bool distinct = n >= k;
    std::vector<std::size_t> idx(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (j == 0) {
            idx[j] = 0;
            continue;
        }
        if (j == k - 1) {
            idx[j] = n - 1;
            continue;
        }
        const std::size_t lo = distinct ? idx[j - 1] + 1 : idx[j - 1];
        const std::size_t hi = distinct ? n - k + j : n - 1;
        const double target = total * static_cast<double>(j) / static_cast<double>(k - 1);

        // First index in [lo, hi] with cum >= target, then compare with its
        // predecessor; ties go to the earlier point.
        auto first = cum.begin() + static_cast<std::ptrdiff_t>(lo);
        auto last = cum.begin() + static_cast<std::ptrdiff_t>(hi) + 1;
        std::size_t best = static_cast<std::size_t>(std::lower_bound(first, last, target) - cum.begin());
        if (best > hi) best = hi;
        if (best > lo && std::fabs(cum[best - 1] - target) <= std::fabs(cum[best] - target)) --best;
        idx[j] = best;
    }
    return idx;
}

std::vector<TrajectoryPoint> extract_keyframes(std::span<const TrajectoryPoint> points, std::size_t k,
                                               double z_weight) {
    std::vector<TrajectoryPoint> out;
    for (std::size_t i : keyframe_indices(points, k, z_weight)) out.push_back(points[i]);
    return out;
}

Direction quantize_step(const Vec3& from, const Vec3& to, double deadzone, double scale, double z_weight) {
    const double threshold = deadzone * scale;
    Direction d;
    for (std::size_t a = 0; a < 3; ++a) {
        double delta = to[a] - from[a];
        if (a == 2) delta *= z_weight;
        d.axis[a] = delta > threshold ? 1 : delta < -threshold ? -1 : 0;
    }
    return d;
}

EncodedTrajectory encode_trajectory(std::span<const TrajectoryPoint> points, std::size_t k, double deadzone,
                                    double z_weight) {
    if (!(deadzone > 0.0)) throw std::invalid_argument("deadzone must be positive");
    const auto clean = remove_outliers(points, z_weight);
    const auto keys = extract_keyframes(clean, k, z_weight);

    EncodedTrajectory enc;
    double sum = 0.0;
    for (std::size_t i = 1; i < keys.size(); ++i)
        sum += weighted_distance(keys[i - 1].position, keys[i].position, z_weight);
    enc.step_length = sum / static_cast<double>(keys.size() - 1);
    for (std::size_t i = 1; i < keys.size(); ++i)
        enc.trajectory.steps.push_back(
            quantize_step(keys[i - 1].position, keys[i].position, deadzone, enc.step_length, z_weight));
    return enc;
}

}  // namespace hgr
