#include "hgr/landmark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgr/error.hpp"

namespace hgr {

std::string_view to_string(Handedness h) {
    return h == Handedness::Left ? "Left" : "Right";
}

std::optional<Handedness> parse_handedness(std::string_view s) {
    if (s == "Left") return Handedness::Left;
    if (s == "Right") return Handedness::Right;
    return std::nullopt;
}

Vec3 Hand::centroid() const {
    Vec3 c{0.0, 0.0, 0.0};
    for (const auto& lm : landmarks) {
        c[0] += lm.x;
        c[1] += lm.y;
        c[2] += lm.z;
    }
    for (auto& v : c) v /= static_cast<double>(kLandmarksPerHand);
    return c;
}

const Hand& LandmarkFrame::primary_hand() const {
    if (hands.empty()) throw EmptyFrame();
    const Hand* best = &hands.front();
    for (const auto& h : hands)
        if (h.score > best->score) best = &h;
    return *best;
}

std::array<Landmark, kLandmarksPerHand> normalize_hand(const std::array<Landmark, kLandmarksPerHand>& lms) {
    Hand tmp;
    tmp.landmarks = lms;
    const Vec3 c = tmp.centroid();

    std::array<Landmark, kLandmarksPerHand> out{};
    double radius = 0.0;
    for (std::size_t i = 0; i < kLandmarksPerHand; ++i) {
        out[i] = {lms[i].x - c[0], lms[i].y - c[1], lms[i].z - c[2]};
        radius = std::max(radius, std::sqrt(out[i].x * out[i].x + out[i].y * out[i].y + out[i].z * out[i].z));
    }
    if (radius > 0.0) {
        for (auto& lm : out) {
            lm.x /= radius;
            lm.y /= radius;
            lm.z /= radius;
        }
    }
    return out;
}

namespace {

// Picks the best hand of the given handedness (highest score, earliest on ties).
const Hand* best_of(const LandmarkFrame& frame, std::optional<Handedness> side) {
    const Hand* best = nullptr;
    for (const auto& h : frame.hands) {
        if (side && h.handedness != *side) continue;
        if (!best || h.score > best->score) best = &h;
    }
    return best;
}

void write_hand(const Hand& hand, bool normalize, std::span<double> dst) {
    const auto lms = normalize ? normalize_hand(hand.landmarks) : hand.landmarks;
    for (std::size_t i = 0; i < kLandmarksPerHand; ++i) {
        dst[3 * i] = lms[i].x;
        dst[3 * i + 1] = lms[i].y;
        dst[3 * i + 2] = lms[i].z;
    }
}

}  // namespace

FeatureVector vectorize(const LandmarkFrame& frame, std::size_t num_hands, bool normalize) {
    if (num_hands != 1 && num_hands != 2) throw std::invalid_argument("num_hands must be 1 or 2");
    if (frame.empty()) throw EmptyFrame();

    FeatureVector fv;
    fv.num_hands = num_hands;
    fv.values.assign(FeatureVector::length_for(num_hands), 0.0);
    std::span<double> values(fv.values);
    const std::size_t hand_slot0 = kCoordsPerHand * num_hands;

    if (num_hands == 1) {
        const Hand* h = best_of(frame, std::nullopt);
        write_hand(*h, normalize, values.subspan(0, kCoordsPerHand));
        values[hand_slot0] = static_cast<double>(h->handedness);
        return fv;
    }

    const Hand* sides[2] = {best_of(frame, Handedness::Left), best_of(frame, Handedness::Right)};
    for (std::size_t s = 0; s < 2; ++s) {
        if (sides[s]) {
            write_hand(*sides[s], normalize, values.subspan(s * kCoordsPerHand, kCoordsPerHand));
            values[hand_slot0 + s] = static_cast<double>(sides[s]->handedness);
        } else {
            values[hand_slot0 + s] = -1.0;
        }
    }
    return fv;
}

std::vector<double> strip_handedness(const FeatureVector& v) {
    const std::size_t n = kCoordsPerHand * v.num_hands;
    return {v.values.begin(), v.values.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.values.size()))};
}

}  // namespace hgr
