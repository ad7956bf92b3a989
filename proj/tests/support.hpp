#pragma once

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "easel/error.hpp"
#include "easel/font.hpp"
#include "easel/scenario.hpp"

namespace easel::test {

// Error code thrown by `fn`; fails the test when nothing is thrown.
template <class Fn>
Errc code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an easel::Error");
    return Errc::InvalidArgument;
}

inline const StrokeFont& font() {
    static const StrokeFont f = StrokeFont::load(data_dir() / "fonts" / "desk-kanji.strokes");
    return f;
}

// Target glyph strings of the translation fixture.
inline std::vector<std::string> glyph_corpus() {
    std::ifstream in(data_dir() / "fixtures" / "translations.tsv");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab != std::string::npos) out.push_back(line.substr(tab + 1));
    }
    return out;
}

}  // namespace easel::test
