// Serial reference vs OpenMP kernels on a 1024x768 glyph raster.

#include <benchmark/benchmark.h>

#include "easel/motion.hpp"
#include "easel/scenario.hpp"
#include "easel/strokes.hpp"
#include "easel/topic.hpp"

namespace {

using easel::kernels::Backend;

constexpr int kW = 1024;
constexpr int kH = 768;

const easel::StrokeFont& font() {
    static const easel::StrokeFont f = easel::StrokeFont::load(easel::data_dir() / "fonts" / "desk-kanji.strokes");
    return f;
}

const easel::Bitmap& glyph_raster() {
    static const easel::Bitmap b = easel::render_glyphs("女性史月間", kW, kH, font(), Backend::Serial);
    return b;
}

const easel::Bitmap& skeleton() {
    static const easel::Bitmap s = easel::skeletonize(glyph_raster(), Backend::Serial);
    return s;
}

Backend backend_of(const benchmark::State& state) { return state.range(0) ? Backend::Parallel : Backend::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "openmp" : "serial"); }

void BM_Binarize(benchmark::State& state) {
    easel::GrayImage gray{kW, kH, std::vector<std::uint8_t>(static_cast<std::size_t>(kW) * kH)};
    for (std::size_t i = 0; i < gray.values.size(); ++i) gray.values[i] = static_cast<std::uint8_t>((i * 37) & 0xFF);
    for (auto _ : state) benchmark::DoNotOptimize(easel::binarize(gray, 128, backend_of(state)));
    label(state);
}

void BM_RenderGlyphs(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(easel::render_glyphs("女性史月間", kW, kH, font(), backend_of(state)));
    label(state);
}

void BM_ZhangSuenMark(benchmark::State& state) {
    std::vector<std::uint8_t> marks(glyph_raster().data().size());
    for (auto _ : state) {
        const auto n = backend_of(state) == Backend::Serial
                           ? easel::kernels::serial::zhang_suen_mark(glyph_raster().data(), kW, kH, 0, marks)
                           : easel::kernels::parallel::zhang_suen_mark(glyph_raster().data(), kW, kH, 0, marks);
        benchmark::DoNotOptimize(n);
    }
    label(state);
}

void BM_Skeletonize(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(easel::skeletonize(glyph_raster(), backend_of(state)));
    label(state);
}

void BM_StampDisks(benchmark::State& state) {
    const auto centres = skeleton().pixels();
    std::vector<std::uint8_t> out(static_cast<std::size_t>(kW) * kH);
    for (auto _ : state) {
        std::fill(out.begin(), out.end(), 0);
        if (backend_of(state) == Backend::Serial)
            easel::kernels::serial::stamp_disks(centres, 3.0, kW, kH, out);
        else
            easel::kernels::parallel::stamp_disks(centres, 3.0, kW, kH, out);
        benchmark::ClobberMemory();
    }
    label(state);
}

void BM_Fidelity(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(easel::measure_fidelity(glyph_raster(), skeleton(), 3.0, backend_of(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_Binarize)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RenderGlyphs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZhangSuenMark)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Skeletonize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StampDisks)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Fidelity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
