#include "easel/topic.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "easel/error.hpp"

namespace easel {
namespace {

std::string read_file(const std::filesystem::path& path, Errc code) {
    std::ifstream in(path);
    if (!in) throw Error(code, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
    return out;
}

}  // namespace

Date parse_date(std::string_view iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    auto bad = [&] { return Error(Errc::InvalidArgument, "expected YYYY-MM-DD, got '" + std::string(iso) + "'"); };
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') throw bad();
    if (std::from_chars(iso.data(), iso.data() + 4, y).ec != std::errc{}) throw bad();
    if (std::from_chars(iso.data() + 5, iso.data() + 7, m).ec != std::errc{}) throw bad();
    if (std::from_chars(iso.data() + 8, iso.data() + 10, d).ec != std::errc{}) throw bad();
    const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) throw bad();
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

Date add_days(const Date& date, int days) {
    return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

// ---------------------------------------------------------------------------

FixtureTrendClient FixtureTrendClient::parse(std::string_view text) {
    FixtureTrendClient client;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 3)
            throw Error(Errc::ConfigError, "trend fixture line " + std::to_string(line_no) + ": expected date, rank, keyword");
        int rank = 0;
        if (std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), rank).ec != std::errc{} || rank < 1)
            throw Error(Errc::ConfigError, "trend fixture line " + std::to_string(line_no) + ": bad rank");
        client.by_date_[parse_date(fields[0])][rank] = fields[2];
    }
    return client;
}

FixtureTrendClient FixtureTrendClient::load(const std::filesystem::path& path) {
    return parse(read_file(path, Errc::NoTrendData));
}

std::string FixtureTrendClient::fetch_top_keyword(const Date& date) const {
    auto it = by_date_.find(date);
    if (it == by_date_.end() || it->second.empty()) throw Error(Errc::NoTrendData, format_date(date));
    return it->second.begin()->second;
}

std::vector<Date> FixtureTrendClient::dates() const {
    std::vector<Date> out;
    for (const auto& [d, ranks] : by_date_) out.push_back(d);
    return out;
}

FixtureTranslationClient FixtureTranslationClient::parse(std::string_view text) {
    FixtureTranslationClient client;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[1].empty())
            throw Error(Errc::ConfigError, "translation fixture line " + std::to_string(line_no) + ": expected source, glyphs");
        client.pairs_[fields[0]] = fields[1];
    }
    return client;
}

FixtureTranslationClient FixtureTranslationClient::load(const std::filesystem::path& path) {
    return parse(read_file(path, Errc::TranslationUnavailable));
}

std::string FixtureTranslationClient::translate(std::string_view text) const {
    auto it = pairs_.find(text);
    if (it == pairs_.end()) throw Error(Errc::TranslationUnavailable, std::string(text));
    return it->second;
}

Topic select_topic(const Date& date, const TrendClient& trends, const TranslationClient& translator) {
    Topic t;
    t.date = date;
    t.keyword_source = trends.fetch_top_keyword(date);
    t.keyword_glyphs = translator.translate(t.keyword_source);
    if (t.keyword_glyphs.empty()) throw Error(Errc::TranslationUnavailable, t.keyword_source);
    return t;
}

// ---------------------------------------------------------------------------

int margin_pixels(int dimension) { return static_cast<int>(std::ceil(kRasterMargin * dimension)); }

Bitmap render_glyphs(std::string_view glyphs, int width, int height, const StrokeFont& font,
                     kernels::Backend backend) {
    const std::u32string cps = utf8_decode(glyphs);
    if (cps.empty()) throw Error(Errc::InvalidArgument, "empty glyph string");
    if (width < kMinRasterSize || height < kMinRasterSize)
        throw Error(Errc::CanvasTooSmall, std::to_string(width) + "x" + std::to_string(height));

    std::vector<kernels::Segment> design;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const StrokeGlyph* g = font.find(cps[i]);
        if (g == nullptr) throw Error(Errc::UnrenderableGlyph, utf8_encode(cps[i]) + " not in font " + font.name());
        const double dx = static_cast<double>(i) * font.advance();
        for (const auto& stroke : g->strokes) {
            if (stroke.size() == 1) design.push_back({stroke[0].x + dx, stroke[0].y, stroke[0].x + dx, stroke[0].y});
            for (std::size_t k = 1; k < stroke.size(); ++k)
                design.push_back({stroke[k - 1].x + dx, stroke[k - 1].y, stroke[k].x + dx, stroke[k].y});
        }
    }

    const double r = font.weight() / 2;
    double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
    double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
    for (const auto& s : design) {
        lo_x = std::min({lo_x, s.x0, s.x1});
        hi_x = std::max({hi_x, s.x0, s.x1});
        lo_y = std::min({lo_y, s.y0, s.y1});
        hi_y = std::max({hi_y, s.y0, s.y1});
    }
    lo_x -= r;
    lo_y -= r;
    hi_x += r;
    hi_y += r;

    // Two extra pixels per side absorb rasterisation so the 5% border stays
    // clean and the glyph block grows at least linearly with the raster.
    const double avail_w = (1 - 2 * kRasterMargin) * width - 4;
    const double avail_h = (1 - 2 * kRasterMargin) * height - 4;
    const double scale = std::min(avail_w / (hi_x - lo_x), avail_h / (hi_y - lo_y));
    const double cx = (lo_x + hi_x) / 2;
    const double cy = (lo_y + hi_y) / 2;

    std::vector<kernels::Segment> pixel_space;
    pixel_space.reserve(design.size());
    for (const auto& s : design)
        pixel_space.push_back({width / 2.0 + (s.x0 - cx) * scale, height / 2.0 + (s.y0 - cy) * scale,
                               width / 2.0 + (s.x1 - cx) * scale, height / 2.0 + (s.y1 - cy) * scale});

    Bitmap out(width, height);
    if (backend == kernels::Backend::Serial)
        kernels::serial::render_capsules(pixel_space, r * scale, width, height, out.data());
    else
        kernels::parallel::render_capsules(pixel_space, r * scale, width, height, out.data());
    return out;
}

Bitmap render_topic(const Topic& topic, int width, int height, const StrokeFont& font) {
    return render_glyphs(topic.keyword_glyphs, width, height, font);
}

Bitmap render_topic(const Topic& topic, int width, int height, const std::filesystem::path& font_path) {
    return render_topic(topic, width, height, StrokeFont::load(font_path));
}

}  // namespace easel
