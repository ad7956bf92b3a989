#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "easel/bitmap.hpp"
#include "easel/font.hpp"
#include "easel/kernels.hpp"

namespace easel {

using Date = std::chrono::year_month_day;

Date parse_date(std::string_view iso);  // YYYY-MM-DD
std::string format_date(const Date& date);
Date add_days(const Date& date, int days);

struct Topic {
    std::string keyword_source;
    std::string keyword_glyphs;
    Date date;
};

class TrendClient {
public:
    virtual ~TrendClient() = default;
    // Keyword with the most searches on `date`; throws NoTrendData.
    virtual std::string fetch_top_keyword(const Date& date) const = 0;
};

class TranslationClient {
public:
    virtual ~TranslationClient() = default;
    // Target-language glyph string; throws TranslationUnavailable.
    virtual std::string translate(std::string_view text) const = 0;
};

// Tab-separated `date rank keyword` records; rank 1 is the most searched.
class FixtureTrendClient final : public TrendClient {
public:
    static FixtureTrendClient parse(std::string_view text);
    static FixtureTrendClient load(const std::filesystem::path& path);

    std::string fetch_top_keyword(const Date& date) const override;
    std::vector<Date> dates() const;

private:
    std::map<Date, std::map<int, std::string>> by_date_;
};

// Tab-separated `source glyphs` pairs.
class FixtureTranslationClient final : public TranslationClient {
public:
    static FixtureTranslationClient parse(std::string_view text);
    static FixtureTranslationClient load(const std::filesystem::path& path);

    std::string translate(std::string_view text) const override;

private:
    std::map<std::string, std::string, std::less<>> pairs_;
};

Topic select_topic(const Date& date, const TrendClient& trends, const TranslationClient& translator);

// Fraction of each raster dimension kept ink-free on every side.
inline constexpr double kRasterMargin = 0.05;
inline constexpr int kMinRasterSize = 64;

// Renders the glyph string as black strokes centred on a white raster, scaled
// to the largest size that keeps the margin ink-free.
Bitmap render_glyphs(std::string_view glyphs, int width, int height, const StrokeFont& font,
                     kernels::Backend backend = kernels::Backend::Parallel);
Bitmap render_topic(const Topic& topic, int width, int height, const StrokeFont& font);
Bitmap render_topic(const Topic& topic, int width, int height, const std::filesystem::path& font_path);

// Ink-free border width in pixels for a dimension.
int margin_pixels(int dimension);

}  // namespace easel
