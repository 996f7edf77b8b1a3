#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hgr/image.hpp"

namespace hgr {

/// One detection attempt: brightness shift in V units, then rotation in
/// degrees (positive is clockwise on screen). (0, 0) is the identity.
struct AugmentationStage {
    int delta_b = 0;
    int delta_r = 0;

    bool is_identity() const noexcept { return delta_b == 0 && delta_r == 0; }
    bool operator==(const AugmentationStage&) const = default;
};

/// Ordered stage list; detection picks the first stage that finds a hand.
struct AugmentationSetting {
    std::vector<AugmentationStage> stages;

    bool operator==(const AugmentationSetting&) const = default;
};

struct Hsv {
    double h = 0.0;  // degrees, [0, 360)
    double s = 0.0;  // [0, 1]
    int v = 0;       // [0, 255], equals max(R, G, B)
};

Hsv rgb_to_hsv(Rgb px);
Rgb hsv_to_rgb(const Hsv& hsv);

/// V' = clamp(V + delta_b, 0, 255) per pixel, hue and saturation preserved.
Image adjust_brightness(const Image& img, int delta_b);

/// Rotates about the center on an expanded canvas that holds every source
/// pixel. Multiples of 90 degrees are exact pixel permutations; other angles
/// use bilinear sampling with a black background.
Image rotate(const Image& img, double degrees);

/// Output canvas size for a rotation of a width x height image.
std::pair<std::size_t, std::size_t> rotated_bounds(std::size_t width, std::size_t height, double degrees);

Image apply_stage(const Image& img, const AugmentationStage& stage);

/// The four built-in settings: baseline, brightness, rotation, combined.
/// Throws UnknownSetting for ids outside 1..4.
AugmentationSetting builtin_setting(int id);

/// Mean of max(R, G, B) over all pixels; 0 for an empty image.
double mean_value(const Image& img);

}  // namespace hgr
