#pragma once

#include <filesystem>
#include <string>

#include "easel/canvas.hpp"
#include "easel/motion.hpp"
#include "easel/strokes.hpp"
#include "easel/topic.hpp"

namespace easel {

// Knobs for topic -> raster -> strokes -> canvas -> trajectory -> painting.
struct PipelineConfig {
    int raster_width = 1024;
    int raster_height = 768;
    double simplify_epsilon_px = 1.0;
    double brush_radius_px = 3.0;
    CanvasPose pose;
    Workspace workspace;
    int strokes_per_dip = 1;
    double z_hover = 0.02;
    MotionLimits limits;
    kernels::Backend backend = kernels::Backend::Parallel;
};

struct PipelineResult {
    std::string glyphs;
    Bitmap raster;
    Bitmap skeleton;
    StrokeSet strokes;  // traced, ordered and simplified
    MetricStrokeSet metric;
    PaintProgram program;
    Trajectory trajectory;
    Bitmap painted;
    Fidelity fidelity;
};

PipelineResult run_pipeline(std::string_view glyphs, const PipelineConfig& config, const StrokeFont& font);

// raster.pbm, skeleton.pbm, strokes.txt, strokes.svg, trajectory.tsv,
// painted.pbm and a short summary.txt.
void write_artifacts(const PipelineResult& result, const std::filesystem::path& dir);

}  // namespace easel
