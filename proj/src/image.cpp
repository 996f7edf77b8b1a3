#include "hgr/image.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "hgr/error.hpp"

namespace hgr {

static_assert(sizeof(Rgb) == 3, "pixel rows are read and written as packed RGB triples");

Image::Image(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height), pixels_(width * height, fill) {}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

}  // namespace

Image read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open image " + path.string());
    if (next_token(in) != "P6") throw FormatError(path.string() + ": not a binary PPM (P6)");
    std::size_t w = 0, h = 0, maxval = 0;
    try {
        w = std::stoul(next_token(in));
        h = std::stoul(next_token(in));
        maxval = std::stoul(next_token(in));
    } catch (const std::exception&) {
        throw FormatError(path.string() + ": malformed PPM header");
    }
    if (w == 0 || h == 0 || maxval != 255) throw FormatError(path.string() + ": unsupported PPM dimensions or maxval");

    Image img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels().data()), static_cast<std::streamsize>(w * h * 3));
    if (in.gcount() != static_cast<std::streamsize>(w * h * 3)) throw FormatError(path.string() + ": truncated pixel data");
    return img;
}

void write_ppm(const Image& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write image " + path.string());
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.pixels().size() * 3));
}

}  // namespace hgr
