#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hgr {

inline constexpr std::size_t kLandmarksPerHand = 21;
inline constexpr std::size_t kCoordsPerHand = kLandmarksPerHand * 3;

struct Landmark {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Landmark&) const = default;
};

using Vec3 = std::array<double, 3>;

enum class Handedness : std::uint8_t { Left = 0, Right = 1 };

std::string_view to_string(Handedness h);
std::optional<Handedness> parse_handedness(std::string_view s);

/// One detected hand. `score` is the detector confidence and only orders
/// same-handed duplicates; it does not enter the feature vector.
struct Hand {
    Handedness handedness = Handedness::Right;
    std::array<Landmark, kLandmarksPerHand> landmarks{};
    double score = 1.0;

    Vec3 centroid() const;

    bool operator==(const Hand&) const = default;
};

/// A single detector result. An empty `hands` list means "no hand detected".
struct LandmarkFrame {
    std::uint64_t frame_id = 0;
    std::optional<double> timestamp;
    std::vector<Hand> hands;

    bool empty() const noexcept { return hands.empty(); }

    /// Highest-scoring hand, first one on ties. Precondition: !empty().
    const Hand& primary_hand() const;

    bool operator==(const LandmarkFrame&) const = default;
};

/// Classifier-ready layout: [left 63][right 63 if two hands][handedness slots].
struct FeatureVector {
    std::vector<double> values;
    std::size_t num_hands = 1;

    static constexpr std::size_t length_for(std::size_t num_hands) {
        return kCoordsPerHand * num_hands + num_hands;
    }
};

/// Builds the fixed-size vector for a frame. Throws EmptyFrame when the
/// frame has no hands and std::invalid_argument when num_hands is not 1 or 2.
FeatureVector vectorize(const LandmarkFrame& frame, std::size_t num_hands, bool normalize);

/// Drops the handedness slots, leaving the 63*num_hands coordinates.
std::vector<double> strip_handedness(const FeatureVector& v);

/// Translates the hand to its centroid and scales the largest landmark radius
/// to 1. A hand whose landmarks all coincide is only translated.
std::array<Landmark, kLandmarksPerHand> normalize_hand(const std::array<Landmark, kLandmarksPerHand>& lms);

}  // namespace hgr
