#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "easel/kernels.hpp"

namespace easel::kernels::parallel {

void binarize(std::span<const std::uint8_t> gray, std::uint8_t threshold, std::span<std::uint8_t> out) {
    const auto n = static_cast<std::int64_t>(gray.size());
#pragma omp parallel for simd schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = gray[i] < threshold ? 1 : 0;
}

std::size_t zhang_suen_mark(std::span<const std::uint8_t> bits, int width, int height, int pass,
                            std::span<std::uint8_t> marks) {
    std::size_t marked = 0;
#pragma omp parallel for schedule(static) reduction(+ : marked)
    for (int y = 0; y < height; ++y) {
        std::uint8_t* row = marks.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            const bool del = zhang_suen_deletable(bits, width, height, x, y, pass);
            row[x] = del ? 1 : 0;
            marked += del;
        }
    }
    return marked;
}

void render_capsules(std::span<const Segment> segments, double radius, int width, int height,
                     std::span<std::uint8_t> out) {
    const double r2 = radius * radius;
#pragma omp parallel for schedule(dynamic, 8)
    for (int y = 0; y < height; ++y) {
        std::uint8_t* row = out.data() + static_cast<std::size_t>(y) * width;
        std::fill(row, row + width, 0);
        const double cy = y + 0.5;
        for (const auto& s : segments) {
            if (cy < std::min(s.y0, s.y1) - radius - 1 || cy > std::max(s.y0, s.y1) + radius + 1) continue;
            const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(s.x0, s.x1) - radius - 1)));
            const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(std::max(s.x0, s.x1) + radius)));
            for (int x = x_lo; x <= x_hi; ++x)
                if (squared_distance_to_segment(x + 0.5, cy, s) <= r2) row[x] = 1;
        }
    }
}

void stamp_disks(std::span<const Pixel> centers, double radius, int width, int height, std::span<std::uint8_t> out) {
    const int reach = static_cast<int>(std::floor(radius));
    // Rows are offset by `reach` so centres just off the raster still stamp.
    std::vector<std::vector<int>> by_row(static_cast<std::size_t>(height + 2 * reach));
    for (const auto& c : centers)
        if (c.y >= -reach && c.y < height + reach) by_row[static_cast<std::size_t>(c.y + reach)].push_back(c.x);
    std::vector<int> half_width(static_cast<std::size_t>(reach) + 1);
    for (int dy = 0; dy <= reach; ++dy) half_width[static_cast<std::size_t>(dy)] = disk_half_width(radius, dy);

#pragma omp parallel for schedule(dynamic, 8)
    for (int y = 0; y < height; ++y) {
        std::uint8_t* row = out.data() + static_cast<std::size_t>(y) * width;
        for (int dy = -reach; dy <= reach; ++dy) {
            const int src = y + dy;
            const int hw = half_width[static_cast<std::size_t>(std::abs(dy))];
            if (src < -reach || src >= height + reach || hw < 0) continue;
            for (int cx : by_row[static_cast<std::size_t>(src + reach)])
                for (int x = std::max(0, cx - hw); x <= std::min(width - 1, cx + hw); ++x) row[x] = 1;
        }
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
    const auto size = static_cast<std::int64_t>(a.size());
#pragma omp parallel for simd reduction(+ : n)
    for (std::int64_t i = 0; i < size; ++i) n += (a[i] && b[i]);
    return n;
}

std::size_t count_and_not(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t n = 0;
    const auto size = static_cast<std::int64_t>(a.size());
#pragma omp parallel for simd reduction(+ : n)
    for (std::int64_t i = 0; i < size; ++i) n += (a[i] && !b[i]);
    return n;
}

}  // namespace easel::kernels::parallel
