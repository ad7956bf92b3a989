// Acceptance suite: one PASS/FAIL line per primary criterion, exit status 1
// if any fails. Tolerances and budgets are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "easel/agent.hpp"
#include "easel/canvas.hpp"
#include "easel/motion.hpp"
#include "easel/pipeline.hpp"
#include "easel/strokes.hpp"
#include "oracles.hpp"

using namespace easel;

namespace {

constexpr double kClosureBudgetS = 10.0;
constexpr double kLedgerBudgetS = 5.0;
constexpr double kFidelityBudgetS = 30.0;
constexpr int kLedgerOps = 10'000;
constexpr int kLedgerAccounts = 50;
constexpr int kAuctionSchedules = 1'000;
constexpr std::size_t kMinGlyphFixtures = 20;
constexpr int kTransformPoints = 100'000;
constexpr double kRoundTripPx = 1e-6;
constexpr double kRatioRel = 1e-9;
constexpr double kLimitRel = 1e-6;
constexpr double kDurationAbsS = 1e-9;
constexpr double kMinCoverage = 0.95;
constexpr double kMaxSpurious = 0.05;
constexpr int kShopDepth = 6;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Verdict economic_closure_check() {
    const auto t0 = std::chrono::steady_clock::now();
    Simulation sim(default_scenario());
    sim.run();
    const double secs = seconds_since(t0);
    const ClosureTerms t = economic_closure(sim.engine(), sim.agent().wallet);
    bool loans_repaid = !sim.engine().loans().empty();
    for (const auto& loan : sim.engine().loans()) loans_repaid = loans_repaid && loan.repaid == loan.principal;
    const bool pass = t.holds() && loans_repaid && secs < kClosureBudgetS;
    return {pass, fmt("identity %s, final balance %s tokens, loans repaid %s, %.2f s", t.holds() ? "holds" : "BROKEN",
                      t.final_balance.to_token_string().c_str(), loans_repaid ? "yes" : "no", secs)};
}

Verdict timeline_structure_check() {
    const ScenarioResult a = run_scenario(default_scenario());
    const ScenarioResult b = run_scenario(default_scenario());
    std::map<EventCategory, int> count;
    std::optional<std::size_t> first_sale;
    std::size_t last_funding = 0;
    bool late_outflow = false;  // repayment or supplies before any sale
    for (std::size_t i = 0; i < a.robot_timeline.size(); ++i) {
        const EventCategory c = a.robot_timeline[i].category;
        ++count[c];
        if (c == EventCategory::Funding) last_funding = i;
        if (c == EventCategory::Sale && !first_sale) first_sale = i;
        if ((c == EventCategory::LoanRepayment || c == EventCategory::SupplyPurchase) && !first_sale)
            late_outflow = true;
    }
    const bool counts = count[EventCategory::Funding] >= 1 && count[EventCategory::Sale] == 4 &&
                        count[EventCategory::SupplyPurchase] >= 1 && count[EventCategory::PlatformFee] >= 1 &&
                        count[EventCategory::NetworkFee] >= 1 && count[EventCategory::LoanRepayment] >= 1;
    const bool order = first_sale && last_funding < *first_sale && !late_outflow;
    const bool same = a.log_hash == b.log_hash;
    return {counts && order && same,
            fmt("funding %d, sale %d, supplies %d, platform %d, network %d, repayment %d; order %s; log %.16s... %s",
                count[EventCategory::Funding], count[EventCategory::Sale], count[EventCategory::SupplyPurchase],
                count[EventCategory::PlatformFee], count[EventCategory::NetworkFee],
                count[EventCategory::LoanRepayment], order ? "ok" : "WRONG", to_hex(a.log_hash).c_str(),
                same ? "reproduced" : "DIFFERS")};
}

Verdict ledger_conservation_check() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    LedgerConfig cfg;
    cfg.fee_schedule[EventCategory::Sale] = TokenAmount{3};
    cfg.fee_schedule[EventCategory::EscrowLock] = TokenAmount{1};
    Ledger ledger(cfg);
    std::vector<AccountId> ids;
    std::map<AccountId, __int128> model;  // signed, so a negative state would be visible
    for (int i = 0; i < kLedgerAccounts; ++i) {
        ids.push_back(ledger.create_account("acct-" + std::to_string(i)));
        const std::uint64_t m = rng() % 1000;
        if (m) ledger.mint(ids.back(), TokenAmount{m}, EventCategory::Funding, 0);
        model[ids.back()] = m;
    }
    ledger.seal_genesis(0);
    model[ledger.fee_sink()] = 0;
    const TokenAmount supply = ledger.total_supply();

    int negative = 0, supply_breaks = 0, mismatches = 0, refused = 0;
    for (int op = 0; op < kLedgerOps; ++op) {
        const AccountId& from = ids[rng() % ids.size()];
        const AccountId& to = ids[rng() % ids.size()];
        const std::uint64_t amount = rng() % 120;
        const EventCategory cat = kAllCategories[rng() % kAllCategories.size()];
        const std::uint64_t fee = cat == EventCategory::Sale ? 3 : cat == EventCategory::EscrowLock ? 1 : 0;
        try {
            ledger.transfer(from, to, TokenAmount{amount}, cat, op + 1);
            model[from] -= amount + fee;
            model[to] += amount;
            model[ledger.fee_sink()] += fee;
        } catch (const Error&) {
            ++refused;
        }
        if (ledger.total_supply() != supply) ++supply_breaks;
        for (const auto& [id, bal] : model) {
            if (bal < 0) ++negative;
            if (static_cast<__int128>(ledger.balance(id).base_units()) != bal) ++mismatches;
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = negative == 0 && supply_breaks == 0 && mismatches == 0 && secs < kLedgerBudgetS;
    return {pass, fmt("%d ops over %d accounts (%d refused): supply breaks %d, negative states %d, model mismatches "
                      "%d, %.2f s",
                      kLedgerOps, kLedgerAccounts, refused, supply_breaks, negative, mismatches, secs)};
}

Verdict auction_oracle_check() {
    std::mt19937_64 rng(1234);
    int failures = 0;
    std::string first;
    for (int i = 0; i < kAuctionSchedules; ++i) {
        const auto r = oracle::check_auction(oracle::random_schedule(rng));
        if (!r.ok && failures++ == 0) first = r.why;
    }
    return {failures == 0, fmt("%d schedules, %d disagreements%s%s", kAuctionSchedules, failures,
                               first.empty() ? "" : ": ", first.c_str())};
}

int components(const Bitmap& b) {
    std::vector<char> seen(static_cast<std::size_t>(b.width()) * b.height(), 0);
    auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * b.width() + x; };
    int n = 0;
    for (int y = 0; y < b.height(); ++y)
        for (int x = 0; x < b.width(); ++x) {
            if (!b.at(x, y) || seen[idx(x, y)]) continue;
            ++n;
            std::vector<Pixel> stack{{x, y}};
            seen[idx(x, y)] = 1;
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        if (b.get(p.x + dx, p.y + dy) && !seen[idx(p.x + dx, p.y + dy)]) {
                            seen[idx(p.x + dx, p.y + dy)] = 1;
                            stack.push_back({p.x + dx, p.y + dy});
                        }
            }
        }
    return n;
}

Verdict skeleton_properties_check() {
    const StrokeFont font = StrokeFont::load(data_dir() / "fonts" / "desk-kanji.strokes");
    std::ifstream in(data_dir() / "fixtures" / "translations.tsv");
    std::vector<std::string> glyphs;
    for (std::string line; std::getline(in, line);) {
        const auto tab = line.find('\t');
        if (!line.empty() && line[0] != '#' && tab != std::string::npos) glyphs.push_back(line.substr(tab + 1));
    }
    int ok = 0;
    std::string first_bad;
    for (const auto& g : glyphs) {
        const Bitmap ink = render_glyphs(g, 320, 240, font);
        const Bitmap skel = skeletonize(ink);
        bool thin = true, subset = true;
        for (int y = 0; y < skel.height(); ++y)
            for (int x = 0; x < skel.width(); ++x) {
                if (skel.at(x, y) && !ink.at(x, y)) subset = false;
                if (skel.get(x, y) && skel.get(x + 1, y) && skel.get(x, y + 1) && skel.get(x + 1, y + 1)) thin = false;
            }
        const bool good = thin && subset && components(skel) == components(ink) && skeletonize(skel) == skel;
        if (good) ++ok;
        else if (first_bad.empty()) first_bad = g;
    }
    const bool pass = glyphs.size() >= kMinGlyphFixtures && ok == static_cast<int>(glyphs.size());
    return {pass, fmt("%d/%zu glyph fixtures thin, inside the ink, component-preserving and idempotent%s%s", ok,
                      glyphs.size(), first_bad.empty() ? "" : "; first failure ", first_bad.c_str())};
}

Verdict transform_precision_check() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 1);
    double worst_px = 0, worst_ratio = 0;
    for (int i = 0; i < kTransformPoints; ++i) {
        CanvasPose pose;
        pose.center = {2 * u(rng) - 1, 2 * u(rng) - 1, u(rng)};
        pose.yaw = (2 * u(rng) - 1) * std::numbers::pi;
        pose.width = 0.05 + u(rng);
        pose.height = 0.05 + u(rng);
        const ImageDims dims{16 + static_cast<int>(rng() % 4096), 16 + static_cast<int>(rng() % 4096)};
        const Vec2 a{u(rng) * dims.width, u(rng) * dims.height};
        const Vec2 b{u(rng) * dims.width, u(rng) * dims.height};
        const Vec3 ma = pixel_to_canvas(a, dims, pose);
        const Vec2 back = canvas_to_pixel(ma, dims, pose);
        worst_px = std::max(worst_px, std::hypot(back.x - a.x, back.y - a.y));
        const double len = std::hypot(a.x - b.x, a.y - b.y);
        if (len < 1e-3) continue;
        const double s = std::min(pose.width / dims.width, pose.height / dims.height);
        const double ratio = norm(ma - pixel_to_canvas(b, dims, pose)) / len;
        worst_ratio = std::max(worst_ratio, std::abs(ratio - s) / s);
    }
    return {worst_px < kRoundTripPx && worst_ratio <= kRatioRel,
            fmt("%d points: worst round trip %.3g px, worst ratio deviation %.3g relative", kTransformPoints, worst_px,
                worst_ratio)};
}

struct TimedPipeline {
    PipelineResult result;
    double seconds = 0;
};

// Shared by the trajectory and fidelity criteria; run once, timed end to end.
const TimedPipeline& whm() {
    static const TimedPipeline r = [] {
        const auto t0 = std::chrono::steady_clock::now();
        const StrokeFont font = StrokeFont::load(data_dir() / "fonts" / "desk-kanji.strokes");
        const auto translator = FixtureTranslationClient::load(data_dir() / "fixtures" / "translations.tsv");
        PipelineConfig cfg;  // 1024 x 768
        PipelineResult out = run_pipeline(translator.translate("Women's History Month"), cfg, font);
        return TimedPipeline{std::move(out), seconds_since(t0)};
    }();
    return r;
}

Verdict trajectory_limits_check() {
    const PipelineResult& r = whm().result;
    const MotionLimits lim = PipelineConfig{}.limits;
    const auto fd = oracle::finite_differences(r.trajectory);
    const double speed_excess = fd.worst_speed / lim.v_max - 1;
    const double accel_excess = fd.worst_accel / lim.a_max - 1;
    const double gap = std::abs(r.trajectory.duration() - oracle::expected_duration(r.program, lim));
    const bool pass = fd.increasing && speed_excess <= kLimitRel && accel_excess <= kLimitRel && gap <= kDurationAbsS;
    return {pass, fmt("%zu waypoints: peak speed %.6f of %.3f m/s, peak accel %.6f of %.3f m/s^2, duration %.3f s "
                      "off the closed form by %.3g s",
                      r.trajectory.waypoints.size(), fd.worst_speed, lim.v_max, fd.worst_accel, lim.a_max,
                      r.trajectory.duration(), gap)};
}

Verdict fidelity_check() {
    const PipelineResult& r = whm().result;
    const double secs = whm().seconds;
    const double radius = PipelineConfig{}.brush_radius_px;
    const int reach = static_cast<int>(std::ceil(radius));
    std::size_t skel = 0, covered = 0, painted = 0, spurious = 0;
    for (int y = 0; y < r.skeleton.height(); ++y)
        for (int x = 0; x < r.skeleton.width(); ++x) {
            if (r.skeleton.at(x, y)) {
                ++skel;
                covered += r.painted.at(x, y);
            }
            if (!r.painted.at(x, y)) continue;
            ++painted;
            bool near = false;
            for (int dy = -reach; dy <= reach && !near; ++dy)
                for (int dx = -reach; dx <= reach && !near; ++dx)
                    near = dx * dx + dy * dy <= radius * radius && r.skeleton.get(x + dx, y + dy);
            spurious += !near;
        }
    const double coverage = skel ? double(covered) / skel : 1.0;
    const double spur = painted ? double(spurious) / painted : 0.0;
    const bool pass = coverage >= kMinCoverage && spur <= kMaxSpurious && secs < kFidelityBudgetS;
    return {pass, fmt("%dx%d: coverage %.4f, spurious %.4f, pipeline %.2f s", r.skeleton.width(), r.skeleton.height(),
                      coverage, spur, secs)};
}

Verdict shop_model_check() {
    const auto res = oracle::model_check_shop(kShopDepth);
    return {res.violations == 0, fmt("%llu sequences up to depth %d, %llu violations%s%s",
                                     static_cast<unsigned long long>(res.sequences), kShopDepth,
                                     static_cast<unsigned long long>(res.violations),
                                     res.first_violation.empty() ? "" : ": ", res.first_violation.c_str())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"economic closure", economic_closure_check},
        {"balance timeline structure", timeline_structure_check},
        {"ledger conservation", ledger_conservation_check},
        {"auction oracle equivalence", auction_oracle_check},
        {"skeleton properties", skeleton_properties_check},
        {"transform precision", transform_precision_check},
        {"trajectory limits", trajectory_limits_check},
        {"painting fidelity", fidelity_check},
        {"shop protocol model check", shop_model_check},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
