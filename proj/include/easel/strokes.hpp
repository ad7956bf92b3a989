#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "easel/bitmap.hpp"
#include "easel/font.hpp"
#include "easel/kernels.hpp"

namespace easel {

using PixelPolyline = std::vector<Pixel>;

// Ordered centreline strokes over a width x height raster. Consecutive points
// of a stroke are 8-neighbours; junction pixels are repeated in every stroke
// that meets them; closed loops repeat their first point at the end.
struct StrokeSet {
    int width = 0;
    int height = 0;
    std::vector<PixelPolyline> strokes;

    std::size_t point_count() const;
    friend bool operator==(const StrokeSet&, const StrokeSet&) = default;
};

// Ink iff intensity < threshold.
Bitmap binarize(const GrayImage& image, std::uint8_t threshold,
                kernels::Backend backend = kernels::Backend::Parallel);

// True when removing (x, y) keeps the local 8-connected topology (Yokoi
// connectivity number equals one).
bool is_simple_point(const Bitmap& image, int x, int y);

// Zhang-Suen thinning. Each sub-iteration marks candidates from a snapshot
// (in parallel) and deletes them together, except that a 2x2 square whose four
// pixels are all marked keeps its top-left one. Once that converges, residual
// 2x2 blocks are broken by removing simple points in raster order. The result
// is thin, a subset of the input, and a fixed point of this function.
Bitmap skeletonize(const Bitmap& binary, kernels::Backend backend = kernels::Backend::Parallel);

// Splits the skeleton graph (mixed adjacency: diagonal links only where no
// shared 4-neighbour is ink) at pixels of degree >= 3. Throws NotThin.
StrokeSet trace_strokes(const Bitmap& skeleton);

// Pen-up distance from `start` through the strokes in the given order.
double pen_up_travel(const std::vector<PixelPolyline>& strokes, Vec2 start);

// Greedy nearest-endpoint ordering from `start`, reversing strokes when their
// tail is closer. Falls back to the input order if that travels less.
StrokeSet order_strokes(const StrokeSet& strokes, Vec2 start);

// Ramer-Douglas-Peucker. Endpoints are kept; epsilon 0 returns the input.
PixelPolyline simplify(const PixelPolyline& polyline, double epsilon_px);
StrokeSet simplify(const StrokeSet& strokes, double epsilon_px);

// Draws each stroke point (not the segments between them).
Bitmap rasterize_points(const StrokeSet& strokes);

// "strokes W H" header, then one stroke per line as "x,y x,y ...".
std::string strokes_to_text(const StrokeSet& strokes);
StrokeSet strokes_from_text(std::string_view text);
std::string strokes_to_svg(const StrokeSet& strokes);

}  // namespace easel
