#pragma once

#include <string>
#include <vector>

#include "easel/canvas.hpp"
#include "easel/kernels.hpp"

namespace easel {

enum class CommandKind { DipAt, HoverTo, Lower, StrokeThrough, Raise };
const char* command_name(CommandKind kind);

// DipAt holds the cup position, StrokeThrough the full polyline, the others a
// single target point.
struct PaintCommand {
    CommandKind kind = CommandKind::DipAt;
    std::vector<Vec3> points;
};

struct PaintProgram {
    std::vector<PaintCommand> commands;
    int strokes_per_dip = 1;
    double z_hover = 0.02;
};

// Dip, hover above the stroke start, lower, stroke, raise; re-dip every
// `strokes_per_dip` strokes. Throws OutOfWorkspace if the cup, a hover point
// or a stroke point leaves the workspace.
PaintProgram build_program(const MetricStrokeSet& strokes, const Workspace& workspace, int strokes_per_dip = 1,
                           double z_hover = 0.02);

struct MotionLimits {
    double v_max = 0.25;      // m/s
    double a_max = 0.5;       // m/s^2
    double sample_dt = 0.05;  // s
};

struct Waypoint {
    double t = 0;
    Vec3 position;
    bool pen_down = false;
    bool knot = false;  // exact end of a linear segment rather than an interior sample
};

struct Trajectory {
    std::vector<Waypoint> waypoints;
    MotionLimits limits;

    double duration() const { return waypoints.empty() ? 0.0 : waypoints.back().t; }
    // Pen-down polylines formed by the knots of each contiguous pen-down run.
    std::vector<std::vector<Vec3>> pen_down_polylines() const;
};

// Rest-to-rest time for a straight move of `length`: trapezoidal when the
// move is long enough to reach v_max, triangular otherwise.
double segment_duration(double length, double v_max, double a_max);

// Every linear move (dip cycle legs, hover, lower, each stroke segment, raise)
// gets its own rest-to-rest profile. Starts at rest above the paint cup.
Trajectory time_parameterize(const PaintProgram& program, const MotionLimits& limits);

// Back-projects pen-down knots into the image, joins consecutive ones with
// Bresenham lines and stamps a disk of `brush_radius_px` on every line pixel.
Bitmap simulate_execution(const Trajectory& trajectory, const CanvasPose& pose, double brush_radius_px,
                          ImageDims image, kernels::Backend backend = kernels::Backend::Parallel);

// All-octant integer Bresenham, endpoints included.
std::vector<Pixel> bresenham_line(Pixel a, Pixel b);

struct Fidelity {
    double coverage = 0;  // painted skeleton pixels / skeleton pixels
    double spurious = 0;  // painted pixels outside the radius-dilated skeleton / painted pixels
};
Fidelity measure_fidelity(const Bitmap& painted, const Bitmap& skeleton, double brush_radius_px,
                          kernels::Backend backend = kernels::Backend::Parallel);

// One "t x y z pen" record per line.
std::string trajectory_to_tsv(const Trajectory& trajectory);

}  // namespace easel
