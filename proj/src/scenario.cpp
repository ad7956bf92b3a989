#include "easel/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "easel/error.hpp"

namespace easel {

using nlohmann::json;

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("EASEL_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return EASEL_DATA_DIR;
}

std::string_view strategy_name(StrategyKind s) noexcept {
    switch (s) {
        case StrategyKind::Incremental: return "incremental";
        case StrategyKind::Sniper: return "sniper";
        case StrategyKind::Limit: return "limit";
        case StrategyKind::Manual: return "manual";
    }
    return "?";
}

namespace {

// Reads one JSON object, remembering which keys were consumed so unknown keys
// can be reported. Problems accumulate in a shared list instead of throwing.
class Section {
public:
    Section(const json* node, std::string path, std::vector<std::string>& problems)
        : node_(node), path_(std::move(path)), problems_(problems) {
        if (node_ != nullptr && !node_->is_object()) {
            problem(path_, "expected an object");
            node_ = nullptr;
        }
    }

    bool present() const { return node_ != nullptr; }

    std::string key(std::string_view k) const { return path_.empty() ? std::string(k) : path_ + "." + std::string(k); }

    const json* field(std::string_view k, bool required) {
        seen_.insert(std::string(k));
        if (node_ == nullptr) return nullptr;
        auto it = node_->find(k);
        if (it == node_->end()) {
            if (required) problem(key(k), "missing");
            return nullptr;
        }
        return &*it;
    }

    std::int64_t integer(std::string_view k, std::int64_t def, bool required = false,
                         std::int64_t lo = std::numeric_limits<std::int64_t>::min()) {
        const json* f = field(k, required);
        if (f == nullptr) return def;
        if (!f->is_number_integer()) {
            problem(key(k), "expected an integer");
            return def;
        }
        const auto v = f->get<std::int64_t>();
        if (v < lo) {
            problem(key(k), "must be >= " + std::to_string(lo));
            return def;
        }
        return v;
    }

    double number(std::string_view k, double def, bool required = false) {
        const json* f = field(k, required);
        if (f == nullptr) return def;
        if (!f->is_number()) {
            problem(key(k), "expected a number");
            return def;
        }
        return f->get<double>();
    }

    bool boolean(std::string_view k, bool def) {
        const json* f = field(k, false);
        if (f == nullptr) return def;
        if (!f->is_boolean()) {
            problem(key(k), "expected true or false");
            return def;
        }
        return f->get<bool>();
    }

    std::string text(std::string_view k, std::string def, bool required = false) {
        const json* f = field(k, required);
        if (f == nullptr) return def;
        if (!f->is_string()) {
            problem(key(k), "expected a string");
            return def;
        }
        return f->get<std::string>();
    }

    // Decimal base units ("1500") or a token quantity ("1.5 tokens").
    TokenAmount amount(std::string_view k, TokenAmount def, bool required = false) {
        const json* f = field(k, required);
        if (f == nullptr) return def;
        if (!f->is_string()) {
            problem(key(k), "expected a decimal string");
            return def;
        }
        std::string s = f->get<std::string>();
        try {
            for (const std::string_view suffix : {" tokens", " token"}) {
                if (s.size() > suffix.size() && s.ends_with(suffix))
                    return TokenAmount::parse_tokens(s.substr(0, s.size() - suffix.size()));
            }
            return TokenAmount::parse(s);
        } catch (const Error& e) {
            problem(key(k), e.what());
            return def;
        }
    }

    Vec3 vec3(std::string_view k, Vec3 def) {
        const json* f = field(k, false);
        if (f == nullptr) return def;
        if (!f->is_array() || f->size() != 3 || !(*f)[0].is_number() || !(*f)[1].is_number() || !(*f)[2].is_number()) {
            problem(key(k), "expected [x, y, z]");
            return def;
        }
        return {(*f)[0].get<double>(), (*f)[1].get<double>(), (*f)[2].get<double>()};
    }

    Section section(std::string_view k, bool required = false) { return Section(field(k, required), key(k), problems_); }

    const json* array(std::string_view k, bool required = false) {
        const json* f = field(k, required);
        if (f != nullptr && !f->is_array()) {
            problem(key(k), "expected an array");
            return nullptr;
        }
        return f;
    }

    void finish() {
        if (node_ == nullptr) return;
        for (auto it = node_->begin(); it != node_->end(); ++it)
            if (!seen_.contains(it.key())) problem(key(it.key()), "unknown key");
    }

    void problem(const std::string& where, const std::string& what) { problems_.push_back(where + ": " + what); }

private:
    const json* node_;
    std::string path_;
    std::vector<std::string>& problems_;
    std::set<std::string, std::less<>> seen_;
};

std::filesystem::path resolve(const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : data_dir() / path;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ConfigError, std::string("scenario is not valid JSON: ") + e.what());
    }
    std::vector<std::string> problems;
    Section root(&doc, "", problems);
    if (!root.present()) throw Error(Errc::ConfigError, "scenario must be a JSON object");

    Scenario s;
    s.name = root.text("name", s.name);
    s.seed = static_cast<std::uint64_t>(root.integer("seed", 1, false, 0));
    s.paintings_target = static_cast<int>(root.integer("paintings_target", 4, false, 0));
    s.bidder_jitter = root.integer("bidder_jitter_ticks", s.bidder_jitter, false, 1);

    {
        Section clock = root.section("clock");
        s.tick_seconds = static_cast<int>(clock.integer("tick_seconds", s.tick_seconds, false, 1));
        s.horizon = clock.integer("horizon_ticks", s.horizon, false, 1);
        clock.finish();
    }
    {
        Section robot = root.section("robot");
        s.robot_label = robot.text("label", s.robot_label);
        s.reserve_floor = robot.amount("reserve_floor", s.reserve_floor);
        Section stock = robot.section("stock");
        s.genesis_stock.canvases = static_cast<int>(stock.integer("canvases", s.genesis_stock.canvases, false, 0));
        s.genesis_stock.paint_units = static_cast<int>(stock.integer("paint_units", s.genesis_stock.paint_units, false, 0));
        s.genesis_stock.brushes = static_cast<int>(stock.integer("brushes", s.genesis_stock.brushes, false, 0));
        stock.finish();
        robot.finish();
    }
    if (const json* investors = root.array("investors", true)) {
        for (std::size_t i = 0; i < investors->size(); ++i) {
            Section inv(&(*investors)[i], "investors[" + std::to_string(i) + "]", problems);
            InvestorSpec spec;
            spec.label = inv.text("label", "", true);
            spec.principal = inv.amount("principal", {}, true);
            if (inv.present() && spec.principal.is_zero()) inv.problem(inv.key("principal"), "must be positive");
            inv.finish();
            s.investors.push_back(std::move(spec));
        }
    }
    {
        Section fees = root.section("fees");
        s.ledger.genesis_nonce = fees.text("genesis_nonce", s.ledger.genesis_nonce);
        s.setup_network_fee = fees.amount("setup_network_fee", s.setup_network_fee);
        s.platform_signup_fee = fees.amount("platform_signup", s.platform_signup_fee);
        Section network = fees.section("network");
        for (EventCategory c : kAllCategories) {
            const TokenAmount fee = network.amount(category_name(c), {});
            if (!fee.is_zero()) s.ledger.fee_schedule[c] = fee;
        }
        network.finish();
        fees.finish();
    }
    {
        Section auction = root.section("auction", true);
        s.auction.reserve = auction.amount("reserve", {}, true);
        s.auction.min_increment = auction.amount("min_increment", {}, true);
        if (auction.present() && s.auction.min_increment.is_zero())
            auction.problem(auction.key("min_increment"), "must be at least one base unit");
        s.auction.duration = auction.integer("duration_ticks", 10080, false, 1);
        s.auction.platform_fee_bps = static_cast<std::uint32_t>(auction.integer("platform_fee_bps", 250, false, 0));
        if (s.auction.platform_fee_bps > 10'000) auction.problem(auction.key("platform_fee_bps"), "must be <= 10000");
        auction.finish();
    }
    {
        Section shop = root.section("shop", true);
        s.shop.label = shop.text("label", s.shop.label);
        s.shop.bundle_price = shop.amount("bundle_price", {}, true);
        if (shop.present() && s.shop.bundle_price.is_zero()) shop.problem(shop.key("bundle_price"), "must be positive");
        if (const json* bundle = shop.array("bundle", true)) {
            for (std::size_t i = 0; i < bundle->size(); ++i) {
                Section line(&(*bundle)[i], shop.key("bundle[" + std::to_string(i) + "]"), problems);
                OrderLine ol;
                const std::string kind = line.text("kind", "", true);
                try {
                    if (!kind.empty()) ol.kind = parse_item_kind(kind);
                } catch (const Error&) {
                    line.problem(line.key("kind"), "expected Canvas, Paint or Brush");
                }
                ol.quantity = static_cast<int>(line.integer("quantity", 0, true, 1));
                line.finish();
                s.shop.bundle.push_back(ol);
            }
            if (bundle->empty()) shop.problem(shop.key("bundle"), "must not be empty");
        }
        s.shop.response_delay = shop.integer("response_delay_ticks", s.shop.response_delay, false, 1);
        s.shop.delivery_delay = shop.integer("delivery_delay_ticks", s.shop.delivery_delay, false, 1);
        s.shop.deadline = shop.integer("deadline_ticks", s.shop.deadline, false, 1);
        s.shop.accept = shop.boolean("accept", s.shop.accept);
        shop.finish();
    }
    {
        Section prod = root.section("production");
        const std::string start = prod.text("topic_start", format_date(s.production.topic_start));
        try {
            s.production.topic_start = parse_date(start);
        } catch (const Error&) {
            prod.problem(prod.key("topic_start"), "expected YYYY-MM-DD");
        }
        s.production.topic_step_days = static_cast<int>(prod.integer("topic_step_days", s.production.topic_step_days, false, 0));
        s.production.paint_ticks = prod.integer("paint_ticks", s.production.paint_ticks, false, 1);
        s.production.paint_per_painting =
            static_cast<int>(prod.integer("paint_per_painting", s.production.paint_per_painting, false, 0));
        s.production.brushes_per_painting =
            static_cast<int>(prod.integer("brushes_per_painting", s.production.brushes_per_painting, false, 0));
        prod.finish();
    }
    if (const json* bidders = root.array("bidders")) {
        for (std::size_t i = 0; i < bidders->size(); ++i) {
            Section b(&(*bidders)[i], "bidders[" + std::to_string(i) + "]", problems);
            BidderSpec spec;
            spec.label = b.text("label", "", true);
            spec.budget = b.amount("budget", {}, true);
            const std::string strategy = b.text("strategy", "manual");
            if (strategy == "incremental") spec.strategy = StrategyKind::Incremental;
            else if (strategy == "sniper") spec.strategy = StrategyKind::Sniper;
            else if (strategy == "limit") spec.strategy = StrategyKind::Limit;
            else if (strategy == "manual") spec.strategy = StrategyKind::Manual;
            else b.problem(b.key("strategy"), "expected incremental, sniper, limit or manual");
            spec.step = b.amount("step", {});
            spec.max = b.amount("max", {});
            spec.delay = b.integer("delay_ticks", 0, false, 0);
            spec.session = b.text("session", "");
            if (spec.strategy == StrategyKind::Incremental && spec.step.is_zero() && b.present())
                b.problem(b.key("step"), "incremental bidders need a positive step");
            if (spec.max > spec.budget) b.problem(b.key("max"), "exceeds budget");
            b.finish();
            s.bidders.push_back(std::move(spec));
        }
    }
    {
        Section p = root.section("pipeline");
        auto& c = s.pipeline;
        c.raster_width = static_cast<int>(p.integer("raster_width", c.raster_width, false, kMinRasterSize));
        c.raster_height = static_cast<int>(p.integer("raster_height", c.raster_height, false, kMinRasterSize));
        c.simplify_epsilon_px = p.number("simplify_epsilon_px", c.simplify_epsilon_px);
        c.brush_radius_px = p.number("brush_radius_px", c.brush_radius_px);
        c.strokes_per_dip = static_cast<int>(p.integer("strokes_per_dip", c.strokes_per_dip, false, 1));
        c.z_hover = p.number("z_hover_m", c.z_hover);
        c.limits.v_max = p.number("v_max", c.limits.v_max);
        c.limits.a_max = p.number("a_max", c.limits.a_max);
        c.limits.sample_dt = p.number("sample_dt", c.limits.sample_dt);
        if (c.simplify_epsilon_px < 0) p.problem(p.key("simplify_epsilon_px"), "must be >= 0");
        if (c.brush_radius_px < 0) p.problem(p.key("brush_radius_px"), "must be >= 0");
        if (!(c.z_hover > 0)) p.problem(p.key("z_hover_m"), "must be positive");
        if (!(c.limits.v_max > 0)) p.problem(p.key("v_max"), "must be positive");
        if (!(c.limits.a_max > 0)) p.problem(p.key("a_max"), "must be positive");
        if (!(c.limits.sample_dt > 0)) p.problem(p.key("sample_dt"), "must be positive");
        p.finish();
    }
    {
        Section cv = root.section("canvas");
        auto& n = s.pose.nominal;
        n.center = cv.vec3("center_m", n.center);
        n.yaw = cv.number("yaw_rad", n.yaw);
        n.width = cv.number("width_m", n.width);
        n.height = cv.number("height_m", n.height);
        s.pose.position_noise = cv.number("position_noise_m", 0);
        s.pose.yaw_noise = cv.number("yaw_noise_rad", 0);
        if (!(n.width > 0)) cv.problem(cv.key("width_m"), "must be positive");
        if (!(n.height > 0)) cv.problem(cv.key("height_m"), "must be positive");
        cv.finish();
    }
    {
        Section ws = root.section("workspace");
        auto& w = s.pipeline.workspace;
        w.min = ws.vec3("min_m", w.min);
        w.max = ws.vec3("max_m", w.max);
        w.cup = ws.vec3("cup_m", w.cup);
        if (ws.present() && !w.contains(w.cup)) ws.problem(ws.key("cup_m"), "paint cup outside workspace");
        ws.finish();
    }
    {
        Section d = root.section("data");
        s.trends_path = resolve(d.text("trends", "fixtures/trends.tsv"));
        s.translations_path = resolve(d.text("translations", "fixtures/translations.tsv"));
        s.font_path = resolve(d.text("font", "fonts/desk-kanji.strokes"));
        d.finish();
    }
    root.finish();

    std::set<std::string> labels{s.robot_label, s.shop.label};
    auto unique_label = [&](const std::string& label, const std::string& where) {
        if (!label.empty() && !labels.insert(label).second) problems.push_back(where + ": duplicate account label");
    };
    for (std::size_t i = 0; i < s.investors.size(); ++i)
        unique_label(s.investors[i].label, "investors[" + std::to_string(i) + "].label");
    std::set<std::string> sessions;
    for (std::size_t i = 0; i < s.bidders.size(); ++i) {
        unique_label(s.bidders[i].label, "bidders[" + std::to_string(i) + "].label");
        if (!s.bidders[i].session.empty() && !sessions.insert(s.bidders[i].session).second)
            problems.push_back("bidders[" + std::to_string(i) + "].session: duplicate session token");
    }

    if (!problems.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw Error(Errc::ConfigError, msg);
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ConfigError, "cannot open scenario " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

Scenario default_scenario() { return load_scenario(data_dir() / "scenarios" / "default.json"); }

}  // namespace easel
