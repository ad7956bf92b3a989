#include "easel/canvas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "easel/error.hpp"

namespace easel {

double norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

bool Workspace::contains(Vec3 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z && p.z <= max.z;
}

namespace {

// Canvas-local (x right, y up) to world.
Vec3 local_to_world(double lx, double ly, const CanvasPose& pose) {
    const double c = std::cos(pose.yaw);
    const double s = std::sin(pose.yaw);
    return {pose.center.x + c * lx - s * ly, pose.center.y + s * lx + c * ly, pose.center.z};
}

// Uniform double in [-1, 1) from the top 53 bits of the generator.
double symmetric_unit(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2 * u - 1;
}

}  // namespace

std::vector<Vec3> canvas_corners(const CanvasPose& pose) {
    const double hw = pose.width / 2;
    const double hh = pose.height / 2;
    return {local_to_world(-hw, hh, pose), local_to_world(-hw, -hh, pose), local_to_world(hw, -hh, pose),
            local_to_world(hw, hh, pose)};
}

CanvasPose pose_provider(const PoseConfig& config, const Workspace& workspace, std::uint64_t noise_seed) {
    if (config.position_noise < 0 || config.yaw_noise < 0)
        throw Error(Errc::InvalidArgument, "pose noise amplitudes must be non-negative");
    CanvasPose pose = config.nominal;
    if (config.position_noise > 0 || config.yaw_noise > 0) {
        std::mt19937_64 rng(noise_seed);
        pose.center.x += config.position_noise * symmetric_unit(rng);
        pose.center.y += config.position_noise * symmetric_unit(rng);
        pose.yaw += config.yaw_noise * symmetric_unit(rng);
    }
    if (!(pose.width > 0 && pose.height > 0))
        throw Error(Errc::DegenerateCanvas, "canvas width and height must be positive");
    for (const Vec3& corner : canvas_corners(pose))
        if (!workspace.contains(corner))
            throw Error(Errc::OutOfWorkspace, "canvas corner (" + std::to_string(corner.x) + ", " +
                                                  std::to_string(corner.y) + ", " + std::to_string(corner.z) +
                                                  ") outside work area");
    return pose;
}

double canvas_scale(ImageDims image, const CanvasPose& pose) {
    if (image.width <= 0 || image.height <= 0) throw Error(Errc::DegenerateCanvas, "empty image");
    if (!(pose.width > 0 && pose.height > 0)) throw Error(Errc::DegenerateCanvas, "zero-area canvas");
    return std::min(pose.width / image.width, pose.height / image.height);
}

Vec3 pixel_to_canvas(Vec2 pixel, ImageDims image, const CanvasPose& pose) {
    const double s = canvas_scale(image, pose);
    return local_to_world((pixel.x - image.width / 2.0) * s, -(pixel.y - image.height / 2.0) * s, pose);
}

Vec2 canvas_to_pixel(Vec3 point, ImageDims image, const CanvasPose& pose) {
    const double s = canvas_scale(image, pose);
    const double dx = point.x - pose.center.x;
    const double dy = point.y - pose.center.y;
    const double c = std::cos(pose.yaw);
    const double sn = std::sin(pose.yaw);
    const double lx = c * dx + sn * dy;
    const double ly = -sn * dx + c * dy;
    return {lx / s + image.width / 2.0, -ly / s + image.height / 2.0};
}

MetricStrokeSet pixels_to_canvas(const StrokeSet& strokes, ImageDims image, const CanvasPose& pose) {
    if (strokes.width != image.width || strokes.height != image.height)
        throw Error(Errc::InvalidArgument, "image dimensions do not match the stroke raster");
    MetricStrokeSet out;
    out.image = image;
    out.pose = pose;
    out.scale = canvas_scale(image, pose);
    out.strokes.reserve(strokes.strokes.size());
    for (const auto& stroke : strokes.strokes) {
        std::vector<Vec3> metric;
        metric.reserve(stroke.size());
        for (const Pixel p : stroke) metric.push_back(pixel_to_canvas({double(p.x), double(p.y)}, image, pose));
        out.strokes.push_back(std::move(metric));
    }
    return out;
}

}  // namespace easel
