#pragma once

// Data-parallel raster kernels. Each kernel exists twice with identical
// semantics: `serial` is the straightforward reference used by tests,
// `parallel` is the OpenMP version used by the pipeline. Planes are row-major
// byte images holding 0/1.

#include <cstddef>
#include <cstdint>
#include <span>

#include "easel/bitmap.hpp"

namespace easel::kernels {

enum class Backend { Serial, Parallel };

// Line segment in pixel space; a pixel is inside the capsule when its centre
// (x + 0.5, y + 0.5) lies within `radius` of the segment.
struct Segment {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

inline double squared_distance_to_segment(double px, double py, const Segment& s) {
    const double dx = s.x1 - s.x0;
    const double dy = s.y1 - s.y0;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((px - s.x0) * dx + (py - s.y0) * dy) / len2 : 0.0;
    t = t < 0 ? 0 : (t > 1 ? 1 : t);
    const double ex = s.x0 + t * dx - px;
    const double ey = s.y0 + t * dy - py;
    return ex * ex + ey * ey;
}

// Largest |dx| with dx^2 + dy^2 <= radius^2 for each |dy| in [0, ceil(radius)],
// or -1 when the row is outside the disk.
int disk_half_width(double radius, int dy);

// Neighbourhood order used by the thinning kernels:
//   p9 p2 p3
//   p8 p1 p4
//   p7 p6 p5
// Returns whether pixel (x, y) of `bits` is deletable in the given Zhang-Suen
// sub-iteration (0 or 1). Out-of-bounds neighbours count as background.
bool zhang_suen_deletable(std::span<const std::uint8_t> bits, int width, int height, int x, int y, int pass);

namespace serial {

void binarize(std::span<const std::uint8_t> gray, std::uint8_t threshold, std::span<std::uint8_t> out);
std::size_t zhang_suen_mark(std::span<const std::uint8_t> bits, int width, int height, int pass,
                            std::span<std::uint8_t> marks);
void render_capsules(std::span<const Segment> segments, double radius, int width, int height,
                     std::span<std::uint8_t> out);
void stamp_disks(std::span<const Pixel> centers, double radius, int width, int height, std::span<std::uint8_t> out);
void dilate(std::span<const std::uint8_t> in, int width, int height, double radius, std::span<std::uint8_t> out);
std::size_t count_and(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
std::size_t count_and_not(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace serial

namespace parallel {

void binarize(std::span<const std::uint8_t> gray, std::uint8_t threshold, std::span<std::uint8_t> out);
std::size_t zhang_suen_mark(std::span<const std::uint8_t> bits, int width, int height, int pass,
                            std::span<std::uint8_t> marks);
void render_capsules(std::span<const Segment> segments, double radius, int width, int height,
                     std::span<std::uint8_t> out);
void stamp_disks(std::span<const Pixel> centers, double radius, int width, int height, std::span<std::uint8_t> out);
void dilate(std::span<const std::uint8_t> in, int width, int height, double radius, std::span<std::uint8_t> out);
std::size_t count_and(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
std::size_t count_and_not(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace parallel

}  // namespace easel::kernels
