#pragma once

#include <cstdint>
#include <vector>

#include "easel/font.hpp"
#include "easel/strokes.hpp"

namespace easel {

struct Vec3 {
    double x = 0;
    double y = 0;
    double z = 0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(Vec3 a, double k) { return {a.x * k, a.y * k, a.z * k}; }
double norm(Vec3 v);

// Axis-aligned reachable volume of the arm, in metres, plus the paint cup.
struct Workspace {
    Vec3 min{-1.265, -1.285, 0.0};
    Vec3 max{1.265, 1.285, 1.2};
    Vec3 cup{-0.6, 0.0, 0.3};

    bool contains(Vec3 p) const;
};

// The canvas is the rectangle width x height lying in the plane z = center.z,
// rotated by `yaw` about the plane normal. Image "up" maps to +y at yaw 0.
struct CanvasPose {
    Vec3 center{0.3, 0.0, 0.3};
    double yaw = 0;
    double width = 0.5;
    double height = 0.4;

    friend bool operator==(const CanvasPose&, const CanvasPose&) = default;
};

// Canvas corners in world coordinates, counter-clockwise from the image's
// top-left corner.
std::vector<Vec3> canvas_corners(const CanvasPose& pose);

struct PoseConfig {
    CanvasPose nominal;
    double position_noise = 0;  // metres, uniform in [-d, d] per axis (x, y)
    double yaw_noise = 0;       // radians, uniform in [-d, d]
};

// Nominal pose, optionally jittered by seeded uniform noise. Throws
// OutOfWorkspace when any canvas corner leaves the workspace.
CanvasPose pose_provider(const PoseConfig& config, const Workspace& workspace, std::uint64_t noise_seed);

struct ImageDims {
    int width = 0;
    int height = 0;
};

// Uniform pixel-to-metre scale: min(canvas_w / image_w, canvas_h / image_h).
double canvas_scale(ImageDims image, const CanvasPose& pose);

Vec3 pixel_to_canvas(Vec2 pixel, ImageDims image, const CanvasPose& pose);
Vec2 canvas_to_pixel(Vec3 point, ImageDims image, const CanvasPose& pose);

struct MetricStrokeSet {
    std::vector<std::vector<Vec3>> strokes;
    ImageDims image;
    CanvasPose pose;
    double scale = 0;
};

// Throws DegenerateCanvas for a zero-area canvas or image and InvalidArgument
// when `image` does not match the stroke raster.
MetricStrokeSet pixels_to_canvas(const StrokeSet& strokes, ImageDims image, const CanvasPose& pose);

}  // namespace easel
