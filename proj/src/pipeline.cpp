#include "easel/pipeline.hpp"

#include <cstdio>
#include <fstream>

#include "easel/error.hpp"

namespace easel {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
    out << text;
}

}  // namespace

PipelineResult run_pipeline(std::string_view glyphs, const PipelineConfig& config, const StrokeFont& font) {
    PipelineResult r;
    r.glyphs = std::string(glyphs);
    r.raster = render_glyphs(glyphs, config.raster_width, config.raster_height, font, config.backend);
    r.skeleton = skeletonize(r.raster, config.backend);
    const StrokeSet traced = trace_strokes(r.skeleton);
    r.strokes = simplify(order_strokes(traced, Vec2{0, 0}), config.simplify_epsilon_px);
    const ImageDims dims{config.raster_width, config.raster_height};
    r.metric = pixels_to_canvas(r.strokes, dims, config.pose);
    r.program = build_program(r.metric, config.workspace, config.strokes_per_dip, config.z_hover);
    r.trajectory = time_parameterize(r.program, config.limits);
    r.painted = simulate_execution(r.trajectory, config.pose, config.brush_radius_px, dims, config.backend);
    r.fidelity = measure_fidelity(r.painted, r.skeleton, config.brush_radius_px, config.backend);
    return r;
}

void write_artifacts(const PipelineResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    result.raster.write_pbm(dir / "raster.pbm");
    result.skeleton.write_pbm(dir / "skeleton.pbm");
    write_text(dir / "strokes.txt", strokes_to_text(result.strokes));
    write_text(dir / "strokes.svg", strokes_to_svg(result.strokes));
    write_text(dir / "trajectory.tsv", trajectory_to_tsv(result.trajectory));
    result.painted.write_pbm(dir / "painted.pbm");

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "glyphs\t%s\nstrokes\t%zu\nwaypoints\t%zu\nduration_s\t%.6f\ncoverage\t%.6f\nspurious\t%.6f\n"
                  "painted_sha256\t%s\n",
                  result.glyphs.c_str(), result.strokes.strokes.size(), result.trajectory.waypoints.size(),
                  result.trajectory.duration(), result.fidelity.coverage, result.fidelity.spurious,
                  to_hex(result.painted.hash()).c_str());
    write_text(dir / "summary.txt", buf);
}

}  // namespace easel
