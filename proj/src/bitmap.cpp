#include "easel/bitmap.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "easel/error.hpp"

namespace easel {

std::size_t Bitmap::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Pixel> Bitmap::pixels() const {
    std::vector<Pixel> out;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (at(x, y)) out.push_back({x, y});
    return out;
}

std::string Bitmap::to_pbm() const {
    std::string out = "P4\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n";
    const int row_bytes = (width_ + 7) / 8;
    for (int y = 0; y < height_; ++y) {
        for (int b = 0; b < row_bytes; ++b) {
            unsigned char byte = 0;
            for (int bit = 0; bit < 8; ++bit) {
                const int x = b * 8 + bit;
                if (x < width_ && at(x, y)) byte |= static_cast<unsigned char>(0x80 >> bit);
            }
            out.push_back(static_cast<char>(byte));
        }
    }
    return out;
}

Bitmap Bitmap::from_pbm(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string magic;
    int w = 0, h = 0;
    in >> magic >> w >> h;
    if (magic != "P4" || w <= 0 || h <= 0) throw Error(Errc::IoError, "not a P4 bitmap");
    in.get();
    Bitmap out(w, h);
    const int row_bytes = (w + 7) / 8;
    for (int y = 0; y < h; ++y) {
        for (int b = 0; b < row_bytes; ++b) {
            const int c = in.get();
            if (c == EOF) throw Error(Errc::IoError, "truncated bitmap");
            for (int bit = 0; bit < 8; ++bit) {
                const int x = b * 8 + bit;
                if (x < w && (c & (0x80 >> bit))) out.set(x, y);
            }
        }
    }
    return out;
}

void Bitmap::write_pbm(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
    out << to_pbm();
}

Bitmap Bitmap::read_pbm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_pbm(ss.str());
}

Sha256 Bitmap::hash() const {
    Sha256Builder h;
    h.update(std::to_string(width_) + "x" + std::to_string(height_) + ":");
    h.update(bits_);
    return h.finish();
}

InkBox ink_bounds(const Bitmap& image) {
    InkBox box{image.width(), image.height(), -1, -1};
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            if (image.at(x, y)) {
                box.min_x = std::min(box.min_x, x);
                box.min_y = std::min(box.min_y, y);
                box.max_x = std::max(box.max_x, x);
                box.max_y = std::max(box.max_y, y);
            }
    if (box.max_x < 0) return InkBox{};
    return box;
}

int count_components(const Bitmap& image) {
    const int w = image.width();
    const int h = image.height();
    std::vector<int> parent(static_cast<std::size_t>(w) * h);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!image.at(x, y)) continue;
            const int i = y * w + x;
            // Already-visited half of the 8-neighbourhood.
            if (image.get(x - 1, y)) unite(i, i - 1);
            if (image.get(x - 1, y - 1)) unite(i, i - w - 1);
            if (image.get(x, y - 1)) unite(i, i - w);
            if (image.get(x + 1, y - 1)) unite(i, i - w + 1);
        }
    int components = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (image.at(x, y) && find(y * w + x) == y * w + x) ++components;
    return components;
}

bool has_2x2_block(const Bitmap& image) {
    for (int y = 0; y + 1 < image.height(); ++y)
        for (int x = 0; x + 1 < image.width(); ++x)
            if (image.at(x, y) && image.at(x + 1, y) && image.at(x, y + 1) && image.at(x + 1, y + 1)) return true;
    return false;
}

}  // namespace easel
