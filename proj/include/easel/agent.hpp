#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "easel/contracts.hpp"
#include "easel/pipeline.hpp"
#include "easel/scenario.hpp"
#include "easel/topic.hpp"

namespace easel {

enum class Stage { Funding, Producing, Auctioning, Settling, Restocking, Repaying, Idle };
std::string_view stage_name(Stage s) noexcept;
Stage parse_stage(std::string_view name);

// Funding -> Producing -> Auctioning -> Settling -> {Repaying, Restocking,
// Producing, Idle}; Repaying -> {Restocking, Producing, Idle};
// Restocking -> {Producing, Idle}; Idle -> Producing.
bool stage_transition_allowed(Stage from, Stage to) noexcept;

struct AgentState {
    AccountId wallet;
    Inventory inventory;
    Stage stage = Stage::Funding;
    int paintings_completed = 0;
    int canvases_acquired = 0;  // genesis stock plus fulfilled orders
    std::vector<std::pair<Tick, Stage>> stage_trace;

    // Throws InvalidArgument for a transition outside the stage graph.
    void transition(Stage to, Tick now);
};

bool order_in_flight(const ContractEngine& engine, const AccountId& buyer);

struct OrderProposal {
    std::vector<OrderLine> composition;
    TokenAmount amount;
};

// The configured bundle when the canvas counter is at one and no order of the
// robot is Proposed or Accepted.
std::optional<OrderProposal> restock_policy(const AgentState& state, const ContractEngine& engine,
                                            const ShopParams& shop);

// Funds to hand to repay_loans: the wallet surplus above `reserve_floor`,
// capped at what the outstanding loans and their transfer fees need. Zero
// means no repayment.
TokenAmount repayment_policy(const AgentState& state, const ContractEngine& engine, TokenAmount reserve_floor);

struct CycleContext {
    const Scenario& scenario;
    const StrokeFont& font;
    const TrendClient& trends;
    const TranslationClient& translator;
};

struct CycleOutput {
    Topic topic;
    CanvasPose pose;
    PipelineResult pipeline;
    TokenId token = 0;
    LotId lot = 0;
};

// Topic -> painting -> ownership token -> open auction. Consumes one canvas
// and the configured paint. Throws OutOfSupplies; any failure before the
// token is minted leaves `state` and `engine` untouched.
CycleOutput run_cycle(AgentState& state, ContractEngine& engine, const CycleContext& ctx, const Date& topic_date,
                      Tick now);

struct CycleRecord {
    int index = 0;
    Date topic_date;
    std::string keyword;
    std::string glyphs;
    TokenId token = 0;
    LotId lot = 0;
    Sha256 painted_hash{};
    Fidelity fidelity;
    std::string strokes_svg;
};

struct BidOutcome {
    bool accepted = false;
    std::optional<Errc> error;
    std::string message;
};

// Discrete-event loop over the contract engine. Events are ordered by
// (tick, sequence); the scheduler is the only writer of ledger, contract and
// agent state. Fast-forward (run) and paced (run_until) execution share the
// same dispatch, so they produce the same log.
class Simulation {
public:
    explicit Simulation(Scenario scenario, std::optional<std::filesystem::path> artifact_dir = std::nullopt);
    ~Simulation();
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    Tick now() const { return now_; }
    std::optional<Tick> next_event_time() const;
    bool drained() const { return queue_.empty(); }

    // Dispatches every queued event with time <= t and advances the clock.
    void run_until(Tick t);
    // Fast-forward until the queue drains. Throws Deadlock if an event lies
    // past the horizon or the run stalls before its goals.
    void run();
    // Throws Deadlock unless the target is met and every order is terminal.
    void check_complete() const;

    // Queues a bid arriving now and dispatches it; same path as scripted bids.
    BidOutcome submit_bid(LotId lot, const AccountId& bidder, TokenAmount amount);

    const Scenario& scenario() const { return scenario_; }
    const ContractEngine& engine() const { return engine_; }
    const Ledger& ledger() const { return engine_.ledger(); }
    const AgentState& agent() const { return agent_; }
    const std::vector<CycleRecord>& cycles() const { return cycles_; }
    const std::vector<AccountId>& bidder_accounts() const { return bidder_accounts_; }
    std::optional<AccountId> session_account(std::string_view token) const;
    // Largest amount each bidder ever had locked across open lots at once.
    const std::map<AccountId, TokenAmount>& peak_locked() const { return peak_locked_; }

    // Robot balance as charted in the experiment: the wallet plus the escrow
    // of the robot's own shop orders, so supply payments appear when the shop
    // is paid. Other accounts get their plain ledger timeline.
    std::vector<TimelineEntry> timeline(const AccountId& account) const;
    std::vector<TimelineEntry> robot_timeline() const { return timeline(agent_.wallet); }

    std::string diagnostic() const;

private:
    enum class EventKind { StartProduction, CompletePainting, BidderWake, CloseAuction, ShopRespond, ShopDeliver,
                           OrderDeadline, ExternalBid };
    struct Event {
        Tick time = 0;
        std::uint64_t seq = 0;
        EventKind kind = EventKind::StartProduction;
        std::uint64_t a = 0;
        std::uint64_t b = 0;
    };
    struct Later {
        bool operator()(const Event& x, const Event& y) const {
            return x.time != y.time ? x.time > y.time : x.seq > y.seq;
        }
    };
    struct PendingBid {
        LotId lot = 0;
        AccountId bidder;
        TokenAmount amount;
        BidOutcome outcome;
    };

    void schedule(Tick time, EventKind kind, std::uint64_t a = 0, std::uint64_t b = 0);
    void dispatch(const Event& e);
    void genesis();
    void set_stage(Stage s, Tick now);
    void try_start_production(Tick now);
    void complete_painting(Tick now);
    void close_lot(LotId lot, Tick now);
    void bidder_wake(std::size_t bidder, LotId lot, Tick now);
    BidOutcome apply_bid(LotId lot, const AccountId& bidder, TokenAmount amount, Tick now);
    Tick jitter();
    bool supplies_ready() const;

    Scenario scenario_;
    std::optional<std::filesystem::path> artifact_dir_;
    ContractEngine engine_;
    AgentState agent_;
    StrokeFont font_;
    FixtureTrendClient trends_;
    FixtureTranslationClient translator_;
    std::mt19937_64 rng_;

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t next_seq_ = 0;
    Tick now_ = 0;

    std::vector<AccountId> bidder_accounts_;
    std::map<AccountId, std::size_t> bidder_index_;
    std::map<AccountId, TokenAmount> peak_locked_;
    std::vector<PendingBid> pending_bids_;
    std::vector<CycleRecord> cycles_;
    std::optional<LotId> open_lot_;
};

struct ScenarioResult {
    std::vector<LedgerEvent> log;
    Sha256 log_hash{};
    std::vector<TimelineEntry> robot_timeline;
    AgentState final_state;
    TokenAmount final_balance;
    TokenAmount outstanding_loans;
    std::vector<CycleRecord> cycles;
    int sold = 0;
    int unsold = 0;
};

// Runs to completion; with an artifact directory each painting's pipeline
// artifacts go to <dir>/paintings/NN-date/.
ScenarioResult run_scenario(const Scenario& scenario,
                            std::optional<std::filesystem::path> artifact_dir = std::nullopt);

// "time,balance,category" rows with balances in base units.
std::string timeline_csv(std::span<const TimelineEntry> timeline);
// events.log and timeline.csv under `dir`.
void write_run_outputs(const Simulation& sim, const std::filesystem::path& dir);

// Terms of the robot's wallet identity, each folded from the event log:
// final = funding + gross sales - platform fees - network fees - supplies - repayments.
struct ClosureTerms {
    TokenAmount funding;
    TokenAmount gross_sales;
    TokenAmount platform_fees;
    TokenAmount network_fees;
    TokenAmount supply_payments;
    TokenAmount repayments;
    TokenAmount final_balance;

    bool holds() const;
};
ClosureTerms economic_closure(const ContractEngine& engine, const AccountId& robot);

}  // namespace easel
