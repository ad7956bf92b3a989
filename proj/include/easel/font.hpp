#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace easel {

struct Vec2 {
    double x = 0;
    double y = 0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

using Polyline2 = std::vector<Vec2>;

struct StrokeGlyph {
    char32_t codepoint = 0;
    std::vector<Polyline2> strokes;
};

// Centreline stroke font: glyphs are polylines on an em-square design grid,
// inked as round-capped lines of `weight` design units.
class StrokeFont {
public:
    static StrokeFont parse(std::string_view text);
    static StrokeFont load(const std::filesystem::path& path);

    const StrokeGlyph* find(char32_t codepoint) const;
    const std::string& name() const { return name_; }
    double em() const { return em_; }
    double weight() const { return weight_; }
    double advance() const { return advance_; }
    std::size_t size() const { return glyphs_.size(); }
    std::vector<char32_t> codepoints() const;

private:
    std::string name_;
    double em_ = 100;
    double weight_ = 9;
    double advance_ = 100;
    std::map<char32_t, StrokeGlyph> glyphs_;
};

std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(char32_t codepoint);
std::string utf8_encode(std::u32string_view text);

}  // namespace easel
