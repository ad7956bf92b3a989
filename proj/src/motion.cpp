#include "easel/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "easel/error.hpp"

namespace easel {

const char* command_name(CommandKind kind) {
    switch (kind) {
        case CommandKind::DipAt: return "DipAt";
        case CommandKind::HoverTo: return "HoverTo";
        case CommandKind::Lower: return "Lower";
        case CommandKind::StrokeThrough: return "StrokeThrough";
        case CommandKind::Raise: return "Raise";
    }
    return "?";
}

PaintProgram build_program(const MetricStrokeSet& strokes, const Workspace& workspace, int strokes_per_dip,
                           double z_hover) {
    if (strokes_per_dip < 1) throw Error(Errc::InvalidArgument, "strokes_per_dip must be >= 1");
    if (!(z_hover > 0)) throw Error(Errc::InvalidArgument, "z_hover must be positive");
    const Vec3 lift{0, 0, z_hover};
    auto require = [&](Vec3 p, const char* what) {
        if (!workspace.contains(p))
            throw Error(Errc::OutOfWorkspace, std::string(what) + " (" + std::to_string(p.x) + ", " +
                                                  std::to_string(p.y) + ", " + std::to_string(p.z) + ")");
    };
    require(workspace.cup, "paint cup");
    require(workspace.cup + lift, "point above paint cup");

    PaintProgram program;
    program.strokes_per_dip = strokes_per_dip;
    program.z_hover = z_hover;
    int since_dip = strokes_per_dip;
    for (const auto& stroke : strokes.strokes) {
        if (stroke.empty()) continue;
        for (const Vec3& p : stroke) require(p, "stroke point");
        require(stroke.front() + lift, "hover point");
        require(stroke.back() + lift, "raise point");
        if (since_dip == strokes_per_dip) {
            program.commands.push_back({CommandKind::DipAt, {workspace.cup}});
            since_dip = 0;
        }
        program.commands.push_back({CommandKind::HoverTo, {stroke.front() + lift}});
        program.commands.push_back({CommandKind::Lower, {stroke.front()}});
        program.commands.push_back({CommandKind::StrokeThrough, stroke});
        program.commands.push_back({CommandKind::Raise, {stroke.back() + lift}});
        ++since_dip;
    }
    return program;
}

std::vector<std::vector<Vec3>> Trajectory::pen_down_polylines() const {
    std::vector<std::vector<Vec3>> out;
    bool in_run = false;
    for (const Waypoint& w : waypoints) {
        if (!w.pen_down) {
            in_run = false;
            continue;
        }
        if (!w.knot) continue;
        if (!in_run) out.emplace_back();
        in_run = true;
        out.back().push_back(w.position);
    }
    return out;
}

double segment_duration(double length, double v_max, double a_max) {
    if (length <= 0) return 0;
    if (length >= v_max * v_max / a_max) return length / v_max + v_max / a_max;
    return 2 * std::sqrt(length / a_max);
}

namespace {

// Distance travelled after `t` seconds of a rest-to-rest move lasting `total`.
double profile_distance(double t, double length, double total, double v, double a) {
    const double ramp = std::min(v / a, total / 2);
    if (t <= ramp) return 0.5 * a * t * t;
    if (t >= total - ramp) {
        const double r = total - t;
        return length - 0.5 * a * r * r;
    }
    return 0.5 * a * ramp * ramp + v * (t - ramp);
}

class Timeline {
public:
    Timeline(const MotionLimits& limits, Vec3 start) : limits_(limits), at_(start) {
        traj_.limits = limits;
        traj_.waypoints.push_back({0.0, start, false, true});
    }

    void move(Vec3 to, bool pen_during, bool pen_arrival) {
        const Vec3 delta = to - at_;
        const double length = norm(delta);
        if (length == 0) return;
        const double total = segment_duration(length, limits_.v_max, limits_.a_max);
        const Vec3 dir = delta * (1.0 / length);
        // Interior samples stop half a step short of the end so no interval
        // becomes vanishingly small.
        for (int k = 1;; ++k) {
            const double t = k * limits_.sample_dt;
            if (t >= total - limits_.sample_dt / 2) break;
            const double s = profile_distance(t, length, total, limits_.v_max, limits_.a_max);
            traj_.waypoints.push_back({t0_ + t, at_ + dir * s, pen_during, false});
        }
        t0_ += total;
        traj_.waypoints.push_back({t0_, to, pen_arrival, true});
        at_ = to;
    }

    Trajectory finish() && { return std::move(traj_); }

private:
    MotionLimits limits_;
    Trajectory traj_;
    Vec3 at_;
    double t0_ = 0;
};

}  // namespace

Trajectory time_parameterize(const PaintProgram& program, const MotionLimits& limits) {
    if (!(limits.v_max > 0 && limits.a_max > 0 && limits.sample_dt > 0))
        throw Error(Errc::InvalidArgument, "v_max, a_max and sample_dt must be positive");
    if (program.commands.empty()) {
        Trajectory empty;
        empty.limits = limits;
        return empty;
    }
    const Vec3 lift{0, 0, program.z_hover};
    const PaintCommand& first = program.commands.front();
    Timeline line(limits, first.kind == CommandKind::DipAt ? first.points.front() + lift : first.points.front());
    for (const PaintCommand& cmd : program.commands) {
        switch (cmd.kind) {
            case CommandKind::DipAt:
                line.move(cmd.points.front() + lift, false, false);
                line.move(cmd.points.front(), false, false);
                line.move(cmd.points.front() + lift, false, false);
                break;
            case CommandKind::HoverTo:
                line.move(cmd.points.front(), false, false);
                break;
            case CommandKind::Lower:
                line.move(cmd.points.front(), false, true);
                break;
            case CommandKind::StrokeThrough:
                for (std::size_t i = 1; i < cmd.points.size(); ++i) line.move(cmd.points[i], true, true);
                break;
            case CommandKind::Raise:
                line.move(cmd.points.front(), false, false);
                break;
        }
    }
    return std::move(line).finish();
}

std::vector<Pixel> bresenham_line(Pixel a, Pixel b) {
    std::vector<Pixel> out;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    Pixel p = a;
    while (true) {
        out.push_back(p);
        if (p == b) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            p.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            p.y += sy;
        }
    }
    return out;
}

Bitmap simulate_execution(const Trajectory& trajectory, const CanvasPose& pose, double brush_radius_px,
                          ImageDims image, kernels::Backend backend) {
    Bitmap painted(image.width, image.height);
    if (brush_radius_px < 0) throw Error(Errc::InvalidArgument, "brush radius must be non-negative");
    Bitmap centres(image.width, image.height);
    auto to_pixel = [&](Vec3 p) {
        const Vec2 q = canvas_to_pixel(p, image, pose);
        return Pixel{static_cast<int>(std::lround(q.x)), static_cast<int>(std::lround(q.y))};
    };
    auto mark = [&](Pixel p) {
        if (centres.in_bounds(p.x, p.y)) centres.set(p.x, p.y);
    };
    for (const auto& run : trajectory.pen_down_polylines()) {
        Pixel prev = to_pixel(run.front());
        mark(prev);
        for (std::size_t i = 1; i < run.size(); ++i) {
            const Pixel next = to_pixel(run[i]);
            for (const Pixel p : bresenham_line(prev, next)) mark(p);
            prev = next;
        }
    }
    const auto list = centres.pixels();
    if (backend == kernels::Backend::Serial)
        kernels::serial::stamp_disks(list, brush_radius_px, image.width, image.height, painted.data());
    else
        kernels::parallel::stamp_disks(list, brush_radius_px, image.width, image.height, painted.data());
    return painted;
}

Fidelity measure_fidelity(const Bitmap& painted, const Bitmap& skeleton, double brush_radius_px,
                          kernels::Backend backend) {
    if (painted.width() != skeleton.width() || painted.height() != skeleton.height())
        throw Error(Errc::InvalidArgument, "painted raster and skeleton differ in size");
    Bitmap band(skeleton.width(), skeleton.height());
    std::size_t covered = 0, outside = 0;
    if (backend == kernels::Backend::Serial) {
        kernels::serial::dilate(skeleton.data(), skeleton.width(), skeleton.height(), brush_radius_px, band.data());
        covered = kernels::serial::count_and(painted.data(), skeleton.data());
        outside = kernels::serial::count_and_not(painted.data(), band.data());
    } else {
        kernels::parallel::dilate(skeleton.data(), skeleton.width(), skeleton.height(), brush_radius_px, band.data());
        covered = kernels::parallel::count_and(painted.data(), skeleton.data());
        outside = kernels::parallel::count_and_not(painted.data(), band.data());
    }
    const std::size_t skel = skeleton.count();
    const std::size_t paint = painted.count();
    return {skel ? double(covered) / double(skel) : 1.0, paint ? double(outside) / double(paint) : 0.0};
}

std::string trajectory_to_tsv(const Trajectory& trajectory) {
    std::string out = "# t\tx\ty\tz\tpen\n";
    char buf[160];
    for (const Waypoint& w : trajectory.waypoints) {
        std::snprintf(buf, sizeof buf, "%.9f\t%.9f\t%.9f\t%.9f\t%d\n", w.t, w.position.x, w.position.y, w.position.z,
                      w.pen_down ? 1 : 0);
        out += buf;
    }
    return out;
}

}  // namespace easel
