#include <algorithm>
#include <cmath>
#include <vector>

#include "easel/kernels.hpp"

namespace easel::kernels {

int disk_half_width(double radius, int dy) {
    const double r2 = radius * radius;
    const double dy2 = static_cast<double>(dy) * dy;
    if (dy2 > r2) return -1;
    int hw = 0;
    while (static_cast<double>(hw + 1) * (hw + 1) + dy2 <= r2) ++hw;
    return hw;
}

bool zhang_suen_deletable(std::span<const std::uint8_t> bits, int width, int height, int x, int y, int pass) {
    auto px = [&](int xx, int yy) -> int {
        if (xx < 0 || yy < 0 || xx >= width || yy >= height) return 0;
        return bits[static_cast<std::size_t>(yy) * width + xx];
    };
    if (!px(x, y)) return false;
    const int p2 = px(x, y - 1);
    const int p3 = px(x + 1, y - 1);
    const int p4 = px(x + 1, y);
    const int p5 = px(x + 1, y + 1);
    const int p6 = px(x, y + 1);
    const int p7 = px(x - 1, y + 1);
    const int p8 = px(x - 1, y);
    const int p9 = px(x - 1, y - 1);

    const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
    if (b < 2 || b > 6) return false;
    const int a = (!p2 && p3) + (!p3 && p4) + (!p4 && p5) + (!p5 && p6) + (!p6 && p7) + (!p7 && p8) +
                  (!p8 && p9) + (!p9 && p2);
    if (a != 1) return false;
    if (pass == 0) return p2 * p4 * p6 == 0 && p4 * p6 * p8 == 0;
    return p2 * p4 * p8 == 0 && p2 * p6 * p8 == 0;
}

namespace serial {

void binarize(std::span<const std::uint8_t> gray, std::uint8_t threshold, std::span<std::uint8_t> out) {
    for (std::size_t i = 0; i < gray.size(); ++i) out[i] = gray[i] < threshold ? 1 : 0;
}

std::size_t zhang_suen_mark(std::span<const std::uint8_t> bits, int width, int height, int pass,
                            std::span<std::uint8_t> marks) {
    std::size_t marked = 0;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const bool del = zhang_suen_deletable(bits, width, height, x, y, pass);
            marks[static_cast<std::size_t>(y) * width + x] = del ? 1 : 0;
            marked += del;
        }
    return marked;
}

void render_capsules(std::span<const Segment> segments, double radius, int width, int height,
                     std::span<std::uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    const double r2 = radius * radius;
    for (const auto& s : segments) {
        const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(s.x0, s.x1) - radius - 1)));
        const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(std::max(s.x0, s.x1) + radius)));
        const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(s.y0, s.y1) - radius - 1)));
        const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(std::max(s.y0, s.y1) + radius)));
        for (int y = y_lo; y <= y_hi; ++y)
            for (int x = x_lo; x <= x_hi; ++x)
                if (squared_distance_to_segment(x + 0.5, y + 0.5, s) <= r2)
                    out[static_cast<std::size_t>(y) * width + x] = 1;
    }
}

void stamp_disks(std::span<const Pixel> centers, double radius, int width, int height, std::span<std::uint8_t> out) {
    const int reach = static_cast<int>(std::floor(radius));
    for (const auto& c : centers)
        for (int dy = -reach; dy <= reach; ++dy) {
            const int hw = disk_half_width(radius, std::abs(dy));
            const int y = c.y + dy;
            if (hw < 0 || y < 0 || y >= height) continue;
            for (int x = std::max(0, c.x - hw); x <= std::min(width - 1, c.x + hw); ++x)
                out[static_cast<std::size_t>(y) * width + x] = 1;
        }
}

void dilate(std::span<const std::uint8_t> in, int width, int height, double radius, std::span<std::uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    std::vector<Pixel> centers;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (in[static_cast<std::size_t>(y) * width + x]) centers.push_back({x, y});
    stamp_disks(centers, radius, width, height, out);
}

std::size_t count_and(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] && b[i]);
    return n;
}

std::size_t count_and_not(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] && !b[i]);
    return n;
}

}  // namespace serial
}  // namespace easel::kernels
