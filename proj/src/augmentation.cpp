#include "hgr/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hgr/error.hpp"

namespace hgr {

namespace {

// Round half up, with a small bias for float results just below an exact half.
std::uint8_t round_channel(double x) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(x + 0.5 + 1e-7), 0.0, 255.0));
}

}  // namespace

Hsv rgb_to_hsv(Rgb px) {
    const int r = px.r, g = px.g, b = px.b;
    const int mx = std::max({r, g, b});
    const int mn = std::min({r, g, b});
    const double delta = mx - mn;

    Hsv out;
    out.v = mx;
    out.s = mx == 0 ? 0.0 : delta / mx;
    if (delta == 0.0) return out;

    double h;
    if (mx == r)
        h = 60.0 * std::fmod((g - b) / delta, 6.0);
    else if (mx == g)
        h = 60.0 * ((b - r) / delta + 2.0);
    else
        h = 60.0 * ((r - g) / delta + 4.0);
    if (h < 0.0) h += 360.0;
    out.h = h;
    return out;
}

Rgb hsv_to_rgb(const Hsv& hsv) {
    const double v = hsv.v;
    const double c = v * hsv.s;
    const double hp = hsv.h / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    const double m = v - c;

    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    return {round_channel(r + m), round_channel(g + m), round_channel(b + m)};
}

Image adjust_brightness(const Image& img, int delta_b) {
    if (delta_b == 0) return img;
    Image out = img;
    for (auto& px : out.pixels()) {
        Hsv hsv = rgb_to_hsv(px);
        hsv.v = std::max(std::min(hsv.v + delta_b, 255), 0);
        px = hsv_to_rgb(hsv);
    }
    return out;
}

std::pair<std::size_t, std::size_t> rotated_bounds(std::size_t width, std::size_t height, double degrees) {
    const double theta = degrees * std::numbers::pi / 180.0;
    const double c = std::fabs(std::cos(theta));
    const double s = std::fabs(std::sin(theta));
    const double w = static_cast<double>(width);
    const double h = static_cast<double>(height);
    const auto fit = [](double extent) { return static_cast<std::size_t>(std::ceil(extent - 1e-9)); };
    return {fit(w * c + h * s), fit(w * s + h * c)};
}

namespace {

Image rotate_quarter_turns(const Image& img, int quarters) {
    const std::size_t w = img.width(), h = img.height();
    if (quarters == 0) return img;
    if (quarters == 2) {
        Image out(w, h);
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) out.at(x, y) = img.at(w - 1 - x, h - 1 - y);
        return out;
    }
    Image out(h, w);
    for (std::size_t y = 0; y < w; ++y) {
        for (std::size_t x = 0; x < h; ++x) {
            // quarters == 1 is a clockwise quarter turn on screen.
            out.at(x, y) = quarters == 1 ? img.at(y, h - 1 - x) : img.at(w - 1 - y, x);
        }
    }
    return out;
}

Rgb sample_bilinear(const Image& img, double sx, double sy) {
    const double fx0 = std::floor(sx), fy0 = std::floor(sy);
    const double ax = sx - fx0, ay = sy - fy0;
    const long x0 = static_cast<long>(fx0), y0 = static_cast<long>(fy0);
    const long w = static_cast<long>(img.width()), h = static_cast<long>(img.height());

    double acc[3] = {0, 0, 0};
    const long xs[2] = {x0, x0 + 1};
    const long ys[2] = {y0, y0 + 1};
    const double wx[2] = {1.0 - ax, ax};
    const double wy[2] = {1.0 - ay, ay};
    for (int j = 0; j < 2; ++j) {
        if (ys[j] < 0 || ys[j] >= h || wy[j] == 0.0) continue;
        for (int i = 0; i < 2; ++i) {
            if (xs[i] < 0 || xs[i] >= w || wx[i] == 0.0) continue;
            const Rgb& p = img.at(static_cast<std::size_t>(xs[i]), static_cast<std::size_t>(ys[j]));
            const double k = wx[i] * wy[j];
            acc[0] += k * p.r;
            acc[1] += k * p.g;
            acc[2] += k * p.b;
        }
    }
    return {round_channel(acc[0]), round_channel(acc[1]), round_channel(acc[2])};
}

}  // namespace

Image rotate(const Image& img, double degrees) {
    if (img.empty()) return img;
    const double turns = degrees / 90.0;
    if (turns == std::round(turns)) {
        const int q = static_cast<int>(((static_cast<long>(std::round(turns)) % 4) + 4) % 4);
        return rotate_quarter_turns(img, q);
    }

    const auto [ow, oh] = rotated_bounds(img.width(), img.height(), degrees);
    Image out(ow, oh);
    const double theta = degrees * std::numbers::pi / 180.0;
    const double c = std::cos(theta), s = std::sin(theta);
    const double icx = (static_cast<double>(img.width()) - 1.0) / 2.0;
    const double icy = (static_cast<double>(img.height()) - 1.0) / 2.0;
    const double ocx = (static_cast<double>(ow) - 1.0) / 2.0;
    const double ocy = (static_cast<double>(oh) - 1.0) / 2.0;

    for (std::size_t y = 0; y < oh; ++y) {
        const double dy = static_cast<double>(y) - ocy;
        for (std::size_t x = 0; x < ow; ++x) {
            const double dx = static_cast<double>(x) - ocx;
            // Inverse of the clockwise (y-down) rotation.
            const double sx = c * dx + s * dy + icx;
            const double sy = -s * dx + c * dy + icy;
            out.at(x, y) = sample_bilinear(img, sx, sy);
        }
    }
    return out;
}

Image apply_stage(const Image& img, const AugmentationStage& stage) {
    if (stage.is_identity()) return img;
    Image out = adjust_brightness(img, stage.delta_b);
    if (stage.delta_r != 0) out = rotate(out, stage.delta_r);
    return out;
}

AugmentationSetting builtin_setting(int id) {
    switch (id) {
        case 1: return {{{0, 0}}};
        case 2: return {{{0, 0}, {30, 0}, {60, 0}}};
        case 3: return {{{0, 0}, {0, -15}, {0, 15}, {0, -30}, {0, 30}}};
        case 4: return {{{0, 0}, {30, 0}, {60, 0}, {0, -15}, {0, 15}, {0, -30}, {0, 30}}};
        default: throw UnknownSetting(id);
    }
}

double mean_value(const Image& img) {
    if (img.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& px : img.pixels()) sum += std::max({px.r, px.g, px.b});
    return sum / static_cast<double>(img.pixels().size());
}

}  // namespace hgr
