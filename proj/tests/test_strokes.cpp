#include "support.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "easel/strokes.hpp"
#include "easel/topic.hpp"

using namespace easel;
using easel::test::code_of;
using easel::test::font;

namespace {

Bitmap from_rows(const std::vector<std::string>& rows) {
    Bitmap b(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int y = 0; y < b.height(); ++y)
        for (int x = 0; x < b.width(); ++x) b.set(x, y, rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == '#');
    return b;
}

bool subset(const Bitmap& a, const Bitmap& b) {
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x)
            if (a.at(x, y) && !b.at(x, y)) return false;
    return true;
}

// BFS component count written here, not count_components().
int components(const Bitmap& b) {
    std::vector<int> seen(static_cast<std::size_t>(b.width()) * b.height(), 0);
    int n = 0;
    for (int y = 0; y < b.height(); ++y)
        for (int x = 0; x < b.width(); ++x) {
            if (!b.at(x, y) || seen[static_cast<std::size_t>(y) * b.width() + x]) continue;
            ++n;
            std::vector<Pixel> stack{{x, y}};
            seen[static_cast<std::size_t>(y) * b.width() + x] = 1;
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int qx = p.x + dx, qy = p.y + dy;
                        if (!b.get(qx, qy) || seen[static_cast<std::size_t>(qy) * b.width() + qx]) continue;
                        seen[static_cast<std::size_t>(qy) * b.width() + qx] = 1;
                        stack.push_back({qx, qy});
                    }
            }
        }
    return n;
}

bool thin(const Bitmap& b) {
    for (int y = 0; y + 1 < b.height(); ++y)
        for (int x = 0; x + 1 < b.width(); ++x)
            if (b.at(x, y) && b.at(x + 1, y) && b.at(x, y + 1) && b.at(x + 1, y + 1)) return false;
    return true;
}

int neighbours8(const Bitmap& b, Pixel p) {
    int n = 0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) n += (dx || dy) && b.get(p.x + dx, p.y + dy);
    return n;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y);
}

Vec2 v(Pixel p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

const std::vector<Bitmap>& rendered_corpus() {
    static const std::vector<Bitmap> corpus = [] {
        std::vector<Bitmap> out;
        for (const auto& g : test::glyph_corpus()) out.push_back(render_glyphs(g, 320, 240, font()));
        return out;
    }();
    return corpus;
}

}  // namespace

TEST_CASE("binarize") {
    GrayImage white{4, 3, std::vector<std::uint8_t>(12, 255)};
    GrayImage black{4, 3, std::vector<std::uint8_t>(12, 0)};
    CHECK(binarize(white, 128).count() == 0);
    CHECK(binarize(black, 128).count() == 12);
    CHECK(binarize(black, 0).count() == 0);
    CHECK(binarize(black, 0, kernels::Backend::Serial) == binarize(black, 0, kernels::Backend::Parallel));
}

TEST_CASE("already-thin inputs are fixed points") {
    Bitmap dot(5, 5);
    dot.set(2, 2);
    CHECK(skeletonize(dot) == dot);
    Bitmap bar(12, 3);
    for (int x = 0; x < 12; ++x) bar.set(x, 1);
    CHECK(skeletonize(bar) == bar);
    CHECK(skeletonize(Bitmap(8, 8)).count() == 0);
    CHECK(skeletonize(Bitmap()).empty());
}

TEST_CASE("simple points") {
    const Bitmap b = from_rows({".....", ".###.", ".....", "....."});
    CHECK(is_simple_point(b, 1, 1));
    CHECK_FALSE(is_simple_point(b, 2, 1));
    const Bitmap lone = from_rows({"...", ".#.", "..."});
    CHECK_FALSE(is_simple_point(lone, 1, 1));
}

TEST_CASE("skeletons match the frozen reference thinning") {
    for (const char* name : {"square20", "bar", "plus", "ring", "ell"}) {
        INFO(name);
        const auto dir = data_dir() / "golden";
        const Bitmap in = Bitmap::read_pbm(dir / (std::string(name) + ".input.pbm"));
        const Bitmap want = Bitmap::read_pbm(dir / (std::string(name) + ".skeleton.pbm"));
        const Bitmap got = skeletonize(in);
        CHECK(got == want);
        CHECK(thin(got));
        CHECK(components(got) == 1);
        CHECK(skeletonize(in, kernels::Backend::Serial) == got);
    }
}

TEST_CASE("skeleton properties over rendered glyphs") {
    REQUIRE(rendered_corpus().size() >= 20);
    for (std::size_t i = 0; i < rendered_corpus().size(); ++i) {
        INFO(test::glyph_corpus()[i]);
        const Bitmap& ink = rendered_corpus()[i];
        const Bitmap skel = skeletonize(ink);
        CHECK(skel.count() > 0);
        CHECK(thin(skel));
        CHECK(subset(skel, ink));
        CHECK(components(skel) == components(ink));
        CHECK(skeletonize(skel) == skel);
        CHECK(skeletonize(ink, kernels::Backend::Serial) == skel);
    }
}

TEST_CASE("skeleton properties over random blob unions") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 40; ++round) {
        Bitmap b(60, 50);
        const int blobs = 1 + static_cast<int>(rng() % 5);
        for (int k = 0; k < blobs; ++k) {
            const int cx = 5 + static_cast<int>(rng() % 50), cy = 5 + static_cast<int>(rng() % 40);
            const int rx = 1 + static_cast<int>(rng() % 8), ry = 1 + static_cast<int>(rng() % 8);
            const bool disk = rng() % 2;
            for (int y = cy - ry; y <= cy + ry; ++y)
                for (int x = cx - rx; x <= cx + rx; ++x) {
                    if (!b.in_bounds(x, y)) continue;
                    const double nx = double(x - cx) / rx, ny = double(y - cy) / ry;
                    if (!disk || nx * nx + ny * ny <= 1.0) b.set(x, y);
                }
        }
        INFO("round " << round);
        const Bitmap skel = skeletonize(b);
        CHECK(thin(skel));
        CHECK(subset(skel, b));
        CHECK(components(skel) == components(b));
        CHECK(skeletonize(skel) == skel);
    }
}

TEST_CASE("tracing small fixtures") {
    CHECK(trace_strokes(Bitmap(6, 6)).strokes.empty());

    const Bitmap bar = from_rows({"........", ".######.", "........"});
    const StrokeSet one = trace_strokes(bar);
    REQUIRE(one.strokes.size() == 1);
    const auto& s = one.strokes[0];
    CHECK(s.size() == 6);
    CHECK(std::set<Pixel>{s.front(), s.back()} == std::set<Pixel>{{1, 1}, {6, 1}});

    // Two crossing bars: the centre has four neighbours, the arm tips one,
    // everything else two. So four strokes, each running tip -> centre.
    const Bitmap plus = from_rows({".......", "...#...", "...#...", ".#####.", "...#...", "...#...", "......."});
    REQUIRE(plus.count() == 9);
    const StrokeSet arms = trace_strokes(plus);
    REQUIRE(arms.strokes.size() == 4);
    std::set<Pixel> tips;
    for (const auto& arm : arms.strokes) {
        CHECK(arm.size() == 3);
        const bool centre_first = arm.front() == Pixel{3, 3};
        CHECK((centre_first || arm.back() == Pixel{3, 3}));
        tips.insert(centre_first ? arm.back() : arm.front());
    }
    CHECK(tips == std::set<Pixel>{{3, 1}, {1, 3}, {5, 3}, {3, 5}});

    const Bitmap loop = from_rows({".....", ".###.", ".#.#.", ".###.", "....."});
    const StrokeSet ring = trace_strokes(loop);
    REQUIRE(ring.strokes.size() == 1);
    CHECK(ring.strokes[0].size() == 9);
    CHECK(ring.strokes[0].front() == ring.strokes[0].back());

    CHECK(code_of([] { trace_strokes(from_rows({"....", ".##.", ".##.", "...."})); }) == Errc::NotThin);
}

TEST_CASE("traced strokes cover the skeleton exactly") {
    for (std::size_t i = 0; i < rendered_corpus().size(); ++i) {
        INFO(test::glyph_corpus()[i]);
        const Bitmap skel = skeletonize(rendered_corpus()[i]);
        const StrokeSet set = trace_strokes(skel);
        CHECK(rasterize_points(set) == skel);

        std::map<Pixel, int> owners;
        for (const auto& stroke : set.strokes) {
            REQUIRE(!stroke.empty());
            for (std::size_t k = 1; k < stroke.size(); ++k) {
                CHECK(std::abs(stroke[k].x - stroke[k - 1].x) <= 1);
                CHECK(std::abs(stroke[k].y - stroke[k - 1].y) <= 1);
                CHECK(stroke[k] != stroke[k - 1]);
            }
            for (const Pixel& p : std::set<Pixel>(stroke.begin(), stroke.end())) ++owners[p];
        }
        for (const auto& [p, n] : owners)
            if (n > 1) CHECK(neighbours8(skel, p) >= 3);
    }
}

TEST_CASE("stroke text and SVG export") {
    const StrokeSet s{10, 8, {{{1, 1}, {2, 2}, {3, 2}}, {{7, 7}}}};
    const std::string text = strokes_to_text(s);
    CHECK(text == "strokes 10 8\n1,1 2,2 3,2\n7,7\n");
    CHECK(strokes_from_text(text) == s);
    CHECK(strokes_to_svg(s).find("<polyline") != std::string::npos);
}

TEST_CASE("ordering examples") {
    const StrokeSet single{10, 10, {{{5, 5}, {6, 6}}}};
    CHECK(order_strokes(single, {0, 0}) == single);

    const StrokeSet two{20, 20, {{{15, 15}, {18, 18}}, {{1, 1}, {3, 1}}}};
    const StrokeSet ordered = order_strokes(two, {0, 0});
    CHECK(ordered.strokes[0] == two.strokes[1]);
    CHECK(ordered.strokes[1] == two.strokes[0]);

    // nearer tail gets the stroke reversed
    const StrokeSet tail{20, 20, {{{10, 10}, {1, 1}}}};
    CHECK(order_strokes(tail, {0, 0}).strokes[0] == PixelPolyline{{1, 1}, {10, 10}});
}

TEST_CASE("ordering is a permutation with reversal and never travels more than the input order") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 50; ++round) {
        StrokeSet s{100, 100, {}};
        const int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) {
            PixelPolyline p;
            const int len = 1 + static_cast<int>(rng() % 4);
            for (int k = 0; k < len; ++k) p.push_back({static_cast<int>(rng() % 100), static_cast<int>(rng() % 100)});
            s.strokes.push_back(p);
        }
        const StrokeSet o = order_strokes(s, {0, 0});
        CHECK(pen_up_travel(o.strokes, {0, 0}) <= pen_up_travel(s.strokes, {0, 0}) + 1e-9);
        auto canon = [](std::vector<PixelPolyline> v) {
            for (auto& p : v) p = std::min(p, PixelPolyline(p.rbegin(), p.rend()));
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(canon(o.strokes) == canon(s.strokes));
    }
}

TEST_CASE("greedy ordering against brute force over all 8!*2^8 orderings") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 3; ++round) {
        std::vector<std::pair<Vec2, Vec2>> ends;  // head, tail
        StrokeSet s{200, 200, {}};
        for (int i = 0; i < 8; ++i) {
            const Pixel a{static_cast<int>(rng() % 200), static_cast<int>(rng() % 200)};
            const Pixel b{static_cast<int>(rng() % 200), static_cast<int>(rng() % 200)};
            s.strokes.push_back({a, b});
            ends.push_back({v(a), v(b)});
        }
        auto d = [](Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); };
        std::vector<int> perm(8);
        std::iota(perm.begin(), perm.end(), 0);
        double best = 1e300;
        do {
            for (int flips = 0; flips < 256; ++flips) {
                Vec2 at{0, 0};
                double travel = 0;
                for (int k = 0; k < 8; ++k) {
                    const auto& e = ends[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
                    const bool rev = (flips >> k) & 1;
                    travel += d(at, rev ? e.second : e.first);
                    at = rev ? e.first : e.second;
                }
                best = std::min(best, travel);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        const double identity = pen_up_travel(s.strokes, {0, 0});
        const double greedy = pen_up_travel(order_strokes(s, {0, 0}).strokes, {0, 0});
        CHECK(greedy <= identity + 1e-9);
        CHECK(best <= greedy + 1e-9);
        MESSAGE("instance " << round << ": optimal " << best << ", greedy " << greedy << " (gap "
                            << 100 * (greedy - best) / best << "%), identity " << identity);
    }
}

TEST_CASE("simplification") {
    PixelPolyline line;
    for (int i = 0; i < 10; ++i) line.push_back({i, 2 * i});
    CHECK(simplify(line, 0.5) == PixelPolyline{{0, 0}, {9, 18}});
    CHECK(simplify(line, 0.0) == line);
    CHECK(simplify(PixelPolyline{{3, 3}}, 2.0) == PixelPolyline{{3, 3}});
    CHECK(code_of([&] { simplify(line, -1.0); }) == Errc::InvalidArgument);

    std::mt19937_64 rng(13);
    for (int round = 0; round < 200; ++round) {
        PixelPolyline p{{50, 50}};
        const int n = 2 + static_cast<int>(rng() % 60);
        for (int i = 0; i < n; ++i)
            p.push_back({p.back().x + static_cast<int>(rng() % 3) - 1, p.back().y + static_cast<int>(rng() % 3) - 1});
        const double eps = static_cast<double>(rng() % 40) / 10.0;
        const PixelPolyline q = simplify(p, eps);
        REQUIRE(q.size() >= 1);
        CHECK(q.front() == p.front());
        CHECK(q.back() == p.back());
        CHECK(q.size() <= p.size());
        for (const Pixel& orig : p) {
            double dmin = 1e300;
            for (std::size_t k = 0; k + 1 < q.size(); ++k)
                dmin = std::min(dmin, point_segment_distance(v(orig), v(q[k]), v(q[k + 1])));
            if (q.size() == 1) dmin = std::hypot(orig.x - q[0].x, orig.y - q[0].y);
            CHECK(dmin <= eps + 1e-9);
        }
    }
}
