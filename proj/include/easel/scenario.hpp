#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "easel/contracts.hpp"
#include "easel/pipeline.hpp"
#include "easel/topic.hpp"

namespace easel {

// Root of the bundled data tree: $EASEL_DATA_DIR if set, else the source
// tree's data/ directory baked in at build time.
std::filesystem::path data_dir();

enum class StrategyKind { Incremental, Sniper, Limit, Manual };
std::string_view strategy_name(StrategyKind s) noexcept;

// Scripted bidder. Incremental raises the standing bid by `step` whenever it
// is outbid; Limit answers with the minimum acceptable bid; Sniper places one
// bid of `max` `delay` ticks before the close. Manual bidders only act through
// a gateway session. `max` of zero means "up to the budget".
struct BidderSpec {
    std::string label;
    TokenAmount budget;
    StrategyKind strategy = StrategyKind::Manual;
    TokenAmount step;
    TokenAmount max;
    Tick delay = 0;
    std::string session;  // gateway session token, optional
};

struct InvestorSpec {
    std::string label;
    TokenAmount principal;
};

struct Inventory {
    int canvases = 0;
    int paint_units = 0;
    int brushes = 0;
    friend bool operator==(const Inventory&, const Inventory&) = default;
};

struct AuctionParams {
    TokenAmount reserve;
    TokenAmount min_increment;
    Tick duration = 0;
    std::uint32_t platform_fee_bps = 250;
};

struct ShopParams {
    std::string label = "art-shop";
    TokenAmount bundle_price;
    std::vector<OrderLine> bundle;
    Tick response_delay = 60;
    Tick delivery_delay = 4320;
    Tick deadline = 20160;
    bool accept = true;
};

struct ProductionParams {
    Date topic_start{std::chrono::year{2021}, std::chrono::month{3}, std::chrono::day{22}};
    int topic_step_days = 30;
    Tick paint_ticks = 1440;
    int paint_per_painting = 1;
    int brushes_per_painting = 0;
};

struct Scenario {
    std::string name = "scenario";
    std::uint64_t seed = 1;
    int tick_seconds = 60;
    Tick horizon = 262800;  // six months of minutes
    int paintings_target = 4;

    std::string robot_label = "robot-wallet";
    std::vector<InvestorSpec> investors;
    Inventory genesis_stock{4, 4, 2};
    LedgerConfig ledger;
    TokenAmount setup_network_fee;
    TokenAmount platform_signup_fee;
    TokenAmount reserve_floor;

    AuctionParams auction;
    ShopParams shop;
    ProductionParams production;
    std::vector<BidderSpec> bidders;
    Tick bidder_jitter = 30;

    PipelineConfig pipeline;
    PoseConfig pose;

    std::filesystem::path trends_path;
    std::filesystem::path translations_path;
    std::filesystem::path font_path;
};

// Parses and validates a JSON scenario. Every problem (unknown key, missing
// key, wrong type, bad value) is collected and reported in one ConfigError
// naming the offending keys. Relative data paths resolve against data_dir().
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

// The default four-painting scenario from data/scenarios/default.json.
Scenario default_scenario();

}  // namespace easel
