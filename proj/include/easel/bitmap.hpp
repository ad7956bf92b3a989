#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "easel/digest.hpp"

namespace easel {

struct Pixel {
    int x = 0;  // column
    int y = 0;  // row
    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

// Row-major binary image, one byte per pixel holding 0 or 1 (1 = ink).
class Bitmap {
public:
    Bitmap() = default;
    Bitmap(int width, int height) : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * height, 0) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return bits_.empty(); }
    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
    // Out-of-bounds reads as background.
    bool get(int x, int y) const { return in_bounds(x, y) && at(x, y); }
    void set(int x, int y, bool ink = true) { bits_[index(x, y)] = ink ? 1 : 0; }

    std::span<std::uint8_t> data() { return bits_; }
    std::span<const std::uint8_t> data() const { return bits_; }

    std::size_t count() const;
    std::vector<Pixel> pixels() const;

    // Portable bitmap (P4, 1 = black).
    std::string to_pbm() const;
    static Bitmap from_pbm(const std::string& bytes);
    void write_pbm(const std::filesystem::path& path) const;
    static Bitmap read_pbm(const std::filesystem::path& path);
    Sha256 hash() const;

    friend bool operator==(const Bitmap&, const Bitmap&) = default;

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;  // 0 = black, 255 = white
};

// Bounding box of ink pixels, inclusive. Empty when the image has no ink.
struct InkBox {
    int min_x = 0, min_y = 0, max_x = -1, max_y = -1;
    bool empty() const { return max_x < min_x; }
};
InkBox ink_bounds(const Bitmap& image);

// Number of 8-connected ink components.
int count_components(const Bitmap& image);
// True when some 2x2 window is entirely ink.
bool has_2x2_block(const Bitmap& image);

}  // namespace easel
