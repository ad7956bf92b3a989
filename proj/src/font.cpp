#include "easel/font.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "easel/error.hpp"

namespace easel {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s, int line_no) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(Errc::FontError, "line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::u32string utf8_decode(std::string_view text) {
    std::u32string out;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        int len = 0;
        char32_t cp = 0;
        if (c < 0x80) {
            len = 1;
            cp = c;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            throw Error(Errc::InvalidArgument, "invalid UTF-8 lead byte");
        }
        if (i + len > text.size()) throw Error(Errc::InvalidArgument, "truncated UTF-8 sequence");
        for (int k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(text[i + k]);
            if ((cc & 0xC0) != 0x80) throw Error(Errc::InvalidArgument, "invalid UTF-8 continuation byte");
            cp = (cp << 6) | (cc & 0x3F);
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::string utf8_encode(std::u32string_view text) {
    std::string out;
    for (char32_t cp : text) out += utf8_encode(cp);
    return out;
}

StrokeFont StrokeFont::parse(std::string_view text) {
    StrokeFont font;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    StrokeGlyph* current = nullptr;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto space = line.find(' ');
        const std::string_view key = line.substr(0, space);
        const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

        if (current == nullptr) {
            if (key == "name") {
                font.name_ = std::string(rest);
            } else if (key == "em") {
                font.em_ = parse_double(rest, line_no);
            } else if (key == "weight") {
                font.weight_ = parse_double(rest, line_no);
            } else if (key == "advance") {
                font.advance_ = parse_double(rest, line_no);
            } else if (key == "glyph") {
                const std::u32string cps = utf8_decode(rest);
                if (cps.size() != 1)
                    throw Error(Errc::FontError, "line " + std::to_string(line_no) + ": glyph needs one character");
                if (font.glyphs_.contains(cps[0]))
                    throw Error(Errc::FontError, "line " + std::to_string(line_no) + ": duplicate glyph");
                current = &font.glyphs_[cps[0]];
                current->codepoint = cps[0];
            } else {
                throw Error(Errc::FontError, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
            }
            continue;
        }

        if (line == "end") {
            if (current->strokes.empty())
                throw Error(Errc::FontError, "line " + std::to_string(line_no) + ": glyph without strokes");
            current = nullptr;
            continue;
        }
        Polyline2 stroke;
        std::istringstream points{std::string(line)};
        std::string token;
        while (points >> token) {
            const auto comma = token.find(',');
            if (comma == std::string::npos)
                throw Error(Errc::FontError, "line " + std::to_string(line_no) + ": expected x,y");
            stroke.push_back({parse_double(std::string_view(token).substr(0, comma), line_no),
                              parse_double(std::string_view(token).substr(comma + 1), line_no)});
        }
        current->strokes.push_back(std::move(stroke));
    }
    if (current != nullptr) throw Error(Errc::FontError, "unterminated glyph block");
    if (font.weight_ <= 0 || font.advance_ <= 0 || font.em_ <= 0)
        throw Error(Errc::FontError, "em, weight and advance must be positive");
    return font;
}

StrokeFont StrokeFont::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::FontError, "cannot open font " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const StrokeGlyph* StrokeFont::find(char32_t codepoint) const {
    auto it = glyphs_.find(codepoint);
    return it == glyphs_.end() ? nullptr : &it->second;
}

std::vector<char32_t> StrokeFont::codepoints() const {
    std::vector<char32_t> out;
    for (const auto& [cp, g] : glyphs_) out.push_back(cp);
    return out;
}

}  // namespace easel
