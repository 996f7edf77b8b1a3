#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace hgr {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// Row-major 8-bit RGB image. A default-constructed image is empty (0x0),
/// which detectors that ignore pixels accept.
class Image {
public:
    Image() = default;
    Image(std::size_t width, std::size_t height, Rgb fill = {});

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    bool empty() const noexcept { return pixels_.empty(); }

    Rgb& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
    const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

    std::vector<Rgb>& pixels() noexcept { return pixels_; }
    const std::vector<Rgb>& pixels() const noexcept { return pixels_; }

    bool operator==(const Image&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Rgb> pixels_;
};

/// Binary PPM (P6, maxval 255). Throws FormatError on malformed input.
Image read_ppm(const std::filesystem::path& path);
void write_ppm(const Image& img, const std::filesystem::path& path);

}  // namespace hgr
