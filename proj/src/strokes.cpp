#include "easel/strokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "easel/error.hpp"

namespace easel {

std::size_t StrokeSet::point_count() const {
    std::size_t n = 0;
    for (const auto& s : strokes) n += s.size();
    return n;
}

Bitmap binarize(const GrayImage& image, std::uint8_t threshold, kernels::Backend backend) {
    Bitmap out(image.width, image.height);
    if (backend == kernels::Backend::Serial)
        kernels::serial::binarize(image.values, threshold, out.data());
    else
        kernels::parallel::binarize(image.values, threshold, out.data());
    return out;
}

// ---------------------------------------------------------------------------
// thinning

bool is_simple_point(const Bitmap& image, int x, int y) {
    // x1..x8 counter-clockwise from east.
    const int ring[8] = {
        image.get(x + 1, y),     image.get(x + 1, y - 1), image.get(x, y - 1), image.get(x - 1, y - 1),
        image.get(x - 1, y),     image.get(x - 1, y + 1), image.get(x, y + 1), image.get(x + 1, y + 1),
    };
    auto bg = [&](int k) { return 1 - ring[k % 8]; };
    int n8 = 0;
    for (int k = 0; k < 8; k += 2) n8 += bg(k) - bg(k) * bg(k + 1) * bg(k + 2);
    return n8 == 1;
}

namespace {

bool in_2x2_block(const Bitmap& image, int x, int y) {
    for (int oy = -1; oy <= 0; ++oy)
        for (int ox = -1; ox <= 0; ++ox)
            if (image.get(x + ox, y + oy) && image.get(x + ox + 1, y + oy) && image.get(x + ox, y + oy + 1) &&
                image.get(x + ox + 1, y + oy + 1))
                return true;
    return false;
}

}  // namespace

Bitmap skeletonize(const Bitmap& binary, kernels::Backend backend) {
    Bitmap bits = binary;
    const int w = bits.width();
    const int h = bits.height();
    if (bits.empty()) return bits;
    std::vector<std::uint8_t> marks(bits.data().size());

    auto mark = [&](int pass) {
        return backend == kernels::Backend::Serial
                   ? kernels::serial::zhang_suen_mark(bits.data(), w, h, pass, marks)
                   : kernels::parallel::zhang_suen_mark(bits.data(), w, h, pass, marks);
    };

    while (true) {
        bool changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            if (mark(pass) == 0) continue;
            auto marked = [&](int x, int y) {
                return bits.in_bounds(x, y) && marks[static_cast<std::size_t>(y) * w + x] != 0;
            };
            // Plain Zhang-Suen erases a 2x2 square outright; keep its top-left pixel.
            for (int y = 0; y + 1 < h; ++y)
                for (int x = 0; x + 1 < w; ++x)
                    if (marked(x, y) && marked(x + 1, y) && marked(x, y + 1) && marked(x + 1, y + 1))
                        marks[static_cast<std::size_t>(y) * w + x] = 0;
            for (std::size_t i = 0; i < marks.size(); ++i)
                if (marks[i]) {
                    bits.data()[i] = 0;
                    changed = true;
                }
        }
        if (changed) continue;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (bits.at(x, y) && in_2x2_block(bits, x, y) && is_simple_point(bits, x, y)) {
                    bits.set(x, y, false);
                    changed = true;
                }
        if (!changed) break;
    }
    return bits;
}

// ---------------------------------------------------------------------------
// tracing

namespace {

constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

class SkeletonGraph {
public:
    explicit SkeletonGraph(const Bitmap& image) : image_(image) {}

    std::vector<Pixel> neighbours(Pixel p) const {
        std::vector<Pixel> out;
        for (int k = 0; k < 8; ++k) {
            const Pixel q{p.x + kDx[k], p.y + kDy[k]};
            if (!image_.get(q.x, q.y)) continue;
            if (kDx[k] != 0 && kDy[k] != 0) {
                // Diagonal link only when neither shared 4-neighbour is ink.
                if (image_.get(p.x + kDx[k], p.y) || image_.get(p.x, p.y + kDy[k])) continue;
            }
            out.push_back(q);
        }
        return out;
    }

    std::uint64_t key(Pixel p) const { return static_cast<std::uint64_t>(p.y) * image_.width() + p.x; }
    std::uint64_t edge(Pixel a, Pixel b) const {
        const auto ka = key(a);
        const auto kb = key(b);
        return std::min(ka, kb) * (static_cast<std::uint64_t>(image_.width()) * image_.height()) + std::max(ka, kb);
    }

private:
    const Bitmap& image_;
};

}  // namespace

StrokeSet trace_strokes(const Bitmap& skeleton) {
    if (has_2x2_block(skeleton)) throw Error(Errc::NotThin, "skeleton contains a 2x2 ink block");
    StrokeSet out;
    out.width = skeleton.width();
    out.height = skeleton.height();
    const SkeletonGraph graph(skeleton);
    std::unordered_set<std::uint64_t> visited;

    auto walk = [&](Pixel start, Pixel first) {
        PixelPolyline path{start, first};
        visited.insert(graph.edge(start, first));
        Pixel prev = start;
        Pixel cur = first;
        while (!(cur == start)) {
            const auto nb = graph.neighbours(cur);
            if (nb.size() != 2) break;
            const Pixel next = nb[0] == prev ? nb[1] : nb[0];
            if (visited.contains(graph.edge(cur, next))) break;
            visited.insert(graph.edge(cur, next));
            path.push_back(next);
            prev = cur;
            cur = next;
        }
        out.strokes.push_back(std::move(path));
    };

    const auto pixels = skeleton.pixels();
    for (const Pixel p : pixels) {
        const auto nb = graph.neighbours(p);
        if (nb.empty()) {
            out.strokes.push_back({p});
            continue;
        }
        if (nb.size() == 2) continue;
        for (const Pixel q : nb)
            if (!visited.contains(graph.edge(p, q))) walk(p, q);
    }
    // What is left are junction-free loops.
    for (const Pixel p : pixels) {
        for (const Pixel q : graph.neighbours(p))
            if (!visited.contains(graph.edge(p, q))) walk(p, q);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ordering

namespace {

double dist(Vec2 a, Pixel b) { return std::hypot(a.x - b.x, a.y - b.y); }
Vec2 as_vec(Pixel p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

}  // namespace

double pen_up_travel(const std::vector<PixelPolyline>& strokes, Vec2 start) {
    double total = 0;
    Vec2 at = start;
    for (const auto& s : strokes) {
        if (s.empty()) continue;
        total += dist(at, s.front());
        at = as_vec(s.back());
    }
    return total;
}

StrokeSet order_strokes(const StrokeSet& strokes, Vec2 start) {
    StrokeSet out;
    out.width = strokes.width;
    out.height = strokes.height;
    std::vector<bool> used(strokes.strokes.size(), false);
    Vec2 at = start;
    for (std::size_t n = 0; n < strokes.strokes.size(); ++n) {
        std::size_t best = 0;
        bool reverse = false;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < strokes.strokes.size(); ++i) {
            if (used[i] || strokes.strokes[i].empty()) continue;
            const double head = dist(at, strokes.strokes[i].front());
            const double tail = dist(at, strokes.strokes[i].back());
            if (head < best_d) {
                best_d = head;
                best = i;
                reverse = false;
            }
            if (tail < best_d) {
                best_d = tail;
                best = i;
                reverse = true;
            }
        }
        if (!std::isfinite(best_d)) break;
        used[best] = true;
        PixelPolyline s = strokes.strokes[best];
        if (reverse) std::reverse(s.begin(), s.end());
        at = as_vec(s.back());
        out.strokes.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < strokes.strokes.size(); ++i)
        if (strokes.strokes[i].empty()) out.strokes.push_back({});

    if (pen_up_travel(out.strokes, start) > pen_up_travel(strokes.strokes, start)) return strokes;
    return out;
}

// ---------------------------------------------------------------------------
// simplification

namespace {

double point_segment_distance(Pixel p, Pixel a, Pixel b) {
    return std::sqrt(kernels::squared_distance_to_segment(p.x, p.y, {double(a.x), double(a.y), double(b.x), double(b.y)}));
}

}  // namespace

PixelPolyline simplify(const PixelPolyline& polyline, double epsilon_px) {
    if (epsilon_px < 0) throw Error(Errc::InvalidArgument, "epsilon must be non-negative");
    if (epsilon_px == 0 || polyline.size() < 3) return polyline;
    std::vector<bool> keep(polyline.size(), false);
    keep.front() = keep.back() = true;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, polyline.size() - 1}};
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        double worst = -1;
        std::size_t at = lo;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double d = point_segment_distance(polyline[i], polyline[lo], polyline[hi]);
            if (d > worst) {
                worst = d;
                at = i;
            }
        }
        if (worst > epsilon_px) {
            keep[at] = true;
            stack.push_back({lo, at});
            stack.push_back({at, hi});
        }
    }
    PixelPolyline out;
    for (std::size_t i = 0; i < polyline.size(); ++i)
        if (keep[i]) out.push_back(polyline[i]);
    return out;
}

StrokeSet simplify(const StrokeSet& strokes, double epsilon_px) {
    StrokeSet out{strokes.width, strokes.height, {}};
    out.strokes.reserve(strokes.strokes.size());
    for (const auto& s : strokes.strokes) out.strokes.push_back(simplify(s, epsilon_px));
    return out;
}

// ---------------------------------------------------------------------------
// export

Bitmap rasterize_points(const StrokeSet& strokes) {
    Bitmap out(strokes.width, strokes.height);
    for (const auto& s : strokes.strokes)
        for (const Pixel p : s)
            if (out.in_bounds(p.x, p.y)) out.set(p.x, p.y);
    return out;
}

std::string strokes_to_text(const StrokeSet& strokes) {
    std::ostringstream os;
    os << "strokes " << strokes.width << ' ' << strokes.height << '\n';
    for (const auto& s : strokes.strokes) {
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i].x << ',' << s[i].y;
        os << '\n';
    }
    return os.str();
}

StrokeSet strokes_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    StrokeSet out;
    std::string tag;
    if (!(in >> tag >> out.width >> out.height) || tag != "strokes")
        throw Error(Errc::InvalidArgument, "stroke text must start with 'strokes W H'");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        PixelPolyline s;
        std::istringstream ls(line);
        std::string pt;
        while (ls >> pt) {
            const auto comma = pt.find(',');
            if (comma == std::string::npos) throw Error(Errc::InvalidArgument, "expected x,y in stroke text");
            s.push_back({std::stoi(pt.substr(0, comma)), std::stoi(pt.substr(comma + 1))});
        }
        out.strokes.push_back(std::move(s));
    }
    return out;
}

std::string strokes_to_svg(const StrokeSet& strokes) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << strokes.width << ' ' << strokes.height
       << "\" width=\"" << strokes.width << "\" height=\"" << strokes.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::size_t n = strokes.strokes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = strokes.strokes[i];
        if (s.empty()) continue;
        const int hue = n ? static_cast<int>((i * 360) / n) : 0;
        os << "<polyline fill=\"none\" stroke=\"hsl(" << hue << ",80%,40%)\" stroke-width=\"2\" "
           << "stroke-linecap=\"round\" points=\"";
        for (std::size_t k = 0; k < s.size(); ++k) os << (k ? " " : "") << s[k].x + 0.5 << ',' << s[k].y + 0.5;
        if (s.size() == 1) os << ' ' << s[0].x + 0.5 << ',' << s[0].y + 0.5;
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace easel
