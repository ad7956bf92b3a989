#include "easel/agent.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "easel/error.hpp"

namespace easel {

std::string_view stage_name(Stage s) noexcept {
    switch (s) {
        case Stage::Funding: return "Funding";
        case Stage::Producing: return "Producing";
        case Stage::Auctioning: return "Auctioning";
        case Stage::Settling: return "Settling";
        case Stage::Restocking: return "Restocking";
        case Stage::Repaying: return "Repaying";
        case Stage::Idle: return "Idle";
    }
    return "?";
}

Stage parse_stage(std::string_view name) {
    for (Stage s : {Stage::Funding, Stage::Producing, Stage::Auctioning, Stage::Settling, Stage::Restocking,
                    Stage::Repaying, Stage::Idle})
        if (stage_name(s) == name) return s;
    throw Error(Errc::InvalidArgument, "unknown stage '" + std::string(name) + "'");
}

bool stage_transition_allowed(Stage from, Stage to) noexcept {
    switch (from) {
        case Stage::Funding: return to == Stage::Producing;
        case Stage::Producing: return to == Stage::Auctioning;
        case Stage::Auctioning: return to == Stage::Settling;
        case Stage::Settling:
            return to == Stage::Repaying || to == Stage::Restocking || to == Stage::Producing || to == Stage::Idle;
        case Stage::Repaying: return to == Stage::Restocking || to == Stage::Producing || to == Stage::Idle;
        case Stage::Restocking: return to == Stage::Producing || to == Stage::Idle;
        case Stage::Idle: return to == Stage::Producing;
    }
    return false;
}

void AgentState::transition(Stage to, Tick now) {
    if (!stage_transition_allowed(stage, to))
        throw Error(Errc::InvalidArgument,
                    "stage " + std::string(stage_name(stage)) + " -> " + std::string(stage_name(to)) + " not allowed");
    stage = to;
    stage_trace.emplace_back(now, to);
}

bool order_in_flight(const ContractEngine& engine, const AccountId& buyer) {
    for (const auto& o : engine.orders())
        if (o.buyer == buyer && o.in_flight()) return true;
    return false;
}

std::optional<OrderProposal> restock_policy(const AgentState& state, const ContractEngine& engine,
                                            const ShopParams& shop) {
    if (state.inventory.canvases != 1 || order_in_flight(engine, state.wallet)) return std::nullopt;
    return OrderProposal{shop.bundle, shop.bundle_price};
}

TokenAmount repayment_policy(const AgentState& state, const ContractEngine& engine, TokenAmount reserve_floor) {
    const TokenAmount balance = engine.ledger().balance(state.wallet);
    if (balance <= reserve_floor) return {};
    const TokenAmount fee = engine.ledger().fee_for(EventCategory::LoanRepayment);
    TokenAmount needed;
    for (const auto& loan : engine.loans())
        if (!loan.outstanding().is_zero()) needed += loan.outstanding() + fee;
    return std::min(balance - reserve_floor, needed);
}

// ---------------------------------------------------------------------------

CycleOutput run_cycle(AgentState& state, ContractEngine& engine, const CycleContext& ctx, const Date& topic_date,
                      Tick now) {
    const Scenario& sc = ctx.scenario;
    if (state.stage != Stage::Producing)
        throw Error(Errc::InvalidArgument, "run_cycle needs stage Producing, not " + std::string(stage_name(state.stage)));
    const int paint_need = std::max(1, sc.production.paint_per_painting);
    const int brush_need = std::max(1, sc.production.brushes_per_painting);
    if (state.inventory.canvases < 1 || state.inventory.paint_units < paint_need || state.inventory.brushes < brush_need)
        throw Error(Errc::OutOfSupplies, "canvases=" + std::to_string(state.inventory.canvases) +
                                             " paint=" + std::to_string(state.inventory.paint_units) +
                                             " brushes=" + std::to_string(state.inventory.brushes));

    CycleOutput out;
    out.topic = select_topic(topic_date, ctx.trends, ctx.translator);
    const std::uint64_t pose_seed = sc.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(state.paintings_completed);
    out.pose = pose_provider(sc.pose, sc.pipeline.workspace, pose_seed);
    PipelineConfig config = sc.pipeline;
    config.pose = out.pose;
    out.pipeline = run_pipeline(out.topic.keyword_glyphs, config, ctx.font);

    const Sha256 artwork = out.pipeline.painted.hash();
    for (const auto& t : engine.tokens())
        if (t.artwork == artwork) throw Error(Errc::DuplicateArtwork, to_hex(artwork));

    out.token = engine.mint_token(state.wallet, artwork, now).id;
    out.lot = engine
                  .open_auction(out.token, state.wallet, sc.auction.reserve, sc.auction.min_increment,
                                sc.auction.duration, now, sc.auction.platform_fee_bps)
                  .id;
    state.inventory.canvases -= 1;
    state.inventory.paint_units -= sc.production.paint_per_painting;
    state.inventory.brushes -= sc.production.brushes_per_painting;
    state.paintings_completed += 1;
    state.transition(Stage::Auctioning, now);
    return out;
}

// ---------------------------------------------------------------------------
// simulation

namespace {

std::string memo_for(Stage s) { return "stage " + std::string(stage_name(s)); }

Ledger make_ledger(const Scenario& sc) { return Ledger(sc.ledger); }

}  // namespace

Simulation::Simulation(Scenario scenario, std::optional<std::filesystem::path> artifact_dir)
    : scenario_(std::move(scenario)),
      artifact_dir_(std::move(artifact_dir)),
      engine_(make_ledger(scenario_)),
      font_(StrokeFont::load(scenario_.font_path)),
      trends_(FixtureTrendClient::load(scenario_.trends_path)),
      translator_(FixtureTranslationClient::load(scenario_.translations_path)),
      rng_(scenario_.seed) {
    genesis();
}

Simulation::~Simulation() = default;

void Simulation::genesis() {
    Ledger& ledger = engine_.ledger();
    const Scenario& sc = scenario_;
    agent_.wallet = ledger.create_account(sc.robot_label, 0);
    const AccountId shop = ledger.create_account(sc.shop.label, 0);
    (void)shop;
    std::vector<AccountId> investors;
    for (const auto& inv : sc.investors) investors.push_back(ledger.create_account(inv.label, 0));
    for (const auto& b : sc.bidders) {
        const AccountId id = ledger.create_account(b.label, 0);
        bidder_index_[id] = bidder_accounts_.size();
        bidder_accounts_.push_back(id);
        peak_locked_[id] = {};
    }

    const TokenAmount funding_fee = ledger.fee_for(EventCategory::Funding);
    for (std::size_t i = 0; i < investors.size(); ++i)
        ledger.mint(investors[i], sc.investors[i].principal + funding_fee, EventCategory::Funding, 0, "investor-capital");
    for (std::size_t i = 0; i < bidder_accounts_.size(); ++i)
        if (!sc.bidders[i].budget.is_zero())
            ledger.mint(bidder_accounts_[i], sc.bidders[i].budget, EventCategory::Internal, 0, "bidder-budget");
    ledger.seal_genesis(0);

    ledger.note(agent_.wallet, 0, memo_for(Stage::Funding));
    agent_.stage_trace.emplace_back(0, Stage::Funding);
    for (std::size_t i = 0; i < investors.size(); ++i) {
        ledger.transfer(investors[i], agent_.wallet, sc.investors[i].principal, EventCategory::Funding, 0, "loan");
        engine_.record_loan(investors[i], sc.investors[i].principal);
    }
    if (!sc.setup_network_fee.is_zero())
        ledger.transfer(agent_.wallet, ledger.fee_sink(), sc.setup_network_fee, EventCategory::NetworkFee, 0,
                        "wallet-setup");
    if (!sc.platform_signup_fee.is_zero())
        ledger.transfer(agent_.wallet, engine_.platform(), sc.platform_signup_fee, EventCategory::PlatformFee, 0,
                        "platform-signup");

    agent_.inventory = sc.genesis_stock;
    agent_.canvases_acquired = sc.genesis_stock.canvases;
    schedule(1, EventKind::StartProduction);
}

void Simulation::schedule(Tick time, EventKind kind, std::uint64_t a, std::uint64_t b) {
    queue_.push(Event{time, next_seq_++, kind, a, b});
}

std::optional<Tick> Simulation::next_event_time() const {
    if (queue_.empty()) return std::nullopt;
    return queue_.top().time;
}

Tick Simulation::jitter() { return 1 + static_cast<Tick>(rng_() % static_cast<std::uint64_t>(scenario_.bidder_jitter)); }

void Simulation::set_stage(Stage s, Tick now) {
    agent_.transition(s, now);
    engine_.ledger().note(agent_.wallet, now, memo_for(s));
}

bool Simulation::supplies_ready() const {
    const auto& inv = agent_.inventory;
    return inv.canvases >= 1 && inv.paint_units >= std::max(1, scenario_.production.paint_per_painting) &&
           inv.brushes >= std::max(1, scenario_.production.brushes_per_painting);
}

void Simulation::run_until(Tick t) {
    while (!queue_.empty() && queue_.top().time <= t) {
        const Event e = queue_.top();
        queue_.pop();
        now_ = std::max(now_, e.time);
        dispatch(e);
    }
    now_ = std::max(now_, t);
}

void Simulation::run() {
    while (!queue_.empty()) {
        const Event e = queue_.top();
        if (e.time > scenario_.horizon)
            throw Error(Errc::Deadlock, "next event at tick " + std::to_string(e.time) + " is past the horizon\n" +
                                            diagnostic());
        queue_.pop();
        now_ = std::max(now_, e.time);
        dispatch(e);
    }
    check_complete();
}

void Simulation::check_complete() const {
    bool orders_done = true;
    for (const auto& o : engine_.orders()) orders_done = orders_done && o.terminal();
    if (agent_.paintings_completed < scenario_.paintings_target || !orders_done || open_lot_)
        throw Error(Errc::Deadlock, "no enabled event before the goals were met\n" + diagnostic());
}

std::string Simulation::diagnostic() const {
    std::ostringstream os;
    os << "  tick " << now_ << ", stage " << stage_name(agent_.stage) << ", paintings " << agent_.paintings_completed
       << "/" << scenario_.paintings_target << "\n  inventory canvases=" << agent_.inventory.canvases
       << " paint=" << agent_.inventory.paint_units << " brushes=" << agent_.inventory.brushes
       << "\n  wallet " << ledger().balance(agent_.wallet).to_token_string() << " tokens, loans outstanding "
       << engine_.outstanding_loans().to_token_string() << " tokens";
    for (const auto& o : engine_.orders())
        os << "\n  order " << o.id << " " << order_state_name(o.state) << " deadline " << o.deadline;
    return os.str();
}

void Simulation::dispatch(const Event& e) {
    switch (e.kind) {
        case EventKind::StartProduction: try_start_production(e.time); break;
        case EventKind::CompletePainting: complete_painting(e.time); break;
        case EventKind::BidderWake: bidder_wake(static_cast<std::size_t>(e.a), e.b, e.time); break;
        case EventKind::CloseAuction: close_lot(e.a, e.time); break;
        case EventKind::ShopRespond: {
            const ShopOrder& o = engine_.order(e.a);
            if (o.state != OrderState::Proposed) break;
            const bool funded = ledger().balance(o.buyer) >= o.amount + ledger().fee_for(EventCategory::EscrowLock);
            engine_.shop_respond(o.id, scenario_.shop.accept && funded, e.time);
            if (engine_.order(e.a).state == OrderState::Accepted)
                schedule(e.time + scenario_.shop.delivery_delay, EventKind::ShopDeliver, e.a);
            break;
        }
        case EventKind::ShopDeliver: {
            if (engine_.order(e.a).state != OrderState::Accepted) break;
            const FulfillResult r = engine_.fulfill_order(e.a, e.time);
            for (const OrderLine& line : r.delivered) {
                switch (line.kind) {
                    case ItemKind::Canvas:
                        agent_.inventory.canvases += line.quantity;
                        agent_.canvases_acquired += line.quantity;
                        break;
                    case ItemKind::Paint: agent_.inventory.paint_units += line.quantity; break;
                    case ItemKind::Brush: agent_.inventory.brushes += line.quantity; break;
                }
            }
            if (agent_.stage == Stage::Idle) try_start_production(e.time);
            break;
        }
        case EventKind::OrderDeadline:
            if (!engine_.order(e.a).terminal()) engine_.expire_order(e.a, e.time);
            break;
        case EventKind::ExternalBid: {
            PendingBid& p = pending_bids_[e.a];
            p.outcome = apply_bid(p.lot, p.bidder, p.amount, e.time);
            break;
        }
    }
}

void Simulation::try_start_production(Tick now) {
    if (open_lot_ || agent_.paintings_completed >= scenario_.paintings_target) {
        if (agent_.stage != Stage::Idle && stage_transition_allowed(agent_.stage, Stage::Idle)) set_stage(Stage::Idle, now);
        return;
    }
    if (!supplies_ready()) {
        if (agent_.stage != Stage::Idle && stage_transition_allowed(agent_.stage, Stage::Idle)) set_stage(Stage::Idle, now);
        return;
    }
    set_stage(Stage::Producing, now);
    schedule(now + scenario_.production.paint_ticks, EventKind::CompletePainting);
}

void Simulation::complete_painting(Tick now) {
    const Date date = add_days(scenario_.production.topic_start,
                               agent_.paintings_completed * scenario_.production.topic_step_days);
    const CycleContext ctx{scenario_, font_, trends_, translator_};
    CycleOutput out = run_cycle(agent_, engine_, ctx, date, now);
    engine_.ledger().note(agent_.wallet, now, memo_for(Stage::Auctioning));

    CycleRecord rec;
    rec.index = agent_.paintings_completed;
    rec.topic_date = date;
    rec.keyword = out.topic.keyword_source;
    rec.glyphs = out.topic.keyword_glyphs;
    rec.token = out.token;
    rec.lot = out.lot;
    rec.painted_hash = out.pipeline.painted.hash();
    rec.fidelity = out.pipeline.fidelity;
    rec.strokes_svg = strokes_to_svg(out.pipeline.strokes);
    if (artifact_dir_) {
        char name[64];
        std::snprintf(name, sizeof name, "%02d-%s", rec.index, format_date(date).c_str());
        const auto dir = *artifact_dir_ / "paintings" / name;
        write_artifacts(out.pipeline, dir);
        std::ofstream topic(dir / "topic.txt");
        topic << "date\t" << format_date(date) << "\nkeyword\t" << rec.keyword << "\nglyphs\t" << rec.glyphs
              << "\ntoken\t" << rec.token << "\nlot\t" << rec.lot << "\n";
    }
    cycles_.push_back(std::move(rec));

    open_lot_ = out.lot;
    const AuctionLot& lot = engine_.lot(out.lot);
    schedule(lot.close_time, EventKind::CloseAuction, lot.id);
    for (std::size_t i = 0; i < scenario_.bidders.size(); ++i) {
        const BidderSpec& b = scenario_.bidders[i];
        switch (b.strategy) {
            case StrategyKind::Incremental:
            case StrategyKind::Limit: schedule(now + jitter(), EventKind::BidderWake, i, lot.id); break;
            case StrategyKind::Sniper: {
                const Tick at = lot.close_time - std::max<Tick>(1, b.delay);
                schedule(std::max(at, now + 1), EventKind::BidderWake, i, lot.id);
                break;
            }
            case StrategyKind::Manual: break;
        }
    }
}

void Simulation::close_lot(LotId lot_id, Tick now) {
    const SettlementReport report = engine_.close_auction(lot_id, now);
    open_lot_.reset();
    set_stage(Stage::Settling, now);

    const bool target_met = agent_.paintings_completed >= scenario_.paintings_target;
    if (report.state == LotState::Settled) {
        // Once the last painting has sold nothing more needs financing, unless
        // a proposed order still waits for its escrow.
        bool proposed = false;
        for (const auto& o : engine_.orders()) proposed = proposed || (o.buyer == agent_.wallet && o.state == OrderState::Proposed);
        const TokenAmount floor = target_met && !proposed ? TokenAmount{} : scenario_.reserve_floor;
        const TokenAmount available = repayment_policy(agent_, engine_, floor);
        if (!available.is_zero()) {
            set_stage(Stage::Repaying, now);
            engine_.repay_loans(agent_.wallet, available, now);
        }
    }
    if (auto proposal = restock_policy(agent_, engine_, scenario_.shop)) {
        const TokenAmount need = proposal->amount + ledger().fee_for(EventCategory::EscrowLock);
        if (ledger().balance(agent_.wallet) >= need) {
            set_stage(Stage::Restocking, now);
            const ShopOrder& o = engine_.propose_order(agent_.wallet, *ledger().find(scenario_.shop.label),
                                                       proposal->composition, proposal->amount,
                                                       now + scenario_.shop.deadline, now);
            schedule(now + scenario_.shop.response_delay, EventKind::ShopRespond, o.id);
            schedule(o.deadline + 1, EventKind::OrderDeadline, o.id);
        } else {
            engine_.ledger().note(agent_.wallet, now, "restock-deferred insufficient-funds");
        }
    }
    try_start_production(now);
}

void Simulation::bidder_wake(std::size_t index, LotId lot_id, Tick now) {
    const AuctionLot& lot = engine_.lot(lot_id);
    if (lot.state != LotState::Open || now >= lot.close_time) return;
    const BidderSpec& spec = scenario_.bidders[index];
    const AccountId& me = bidder_accounts_[index];
    if (lot.highest && lot.highest->bidder == me) return;

    const TokenAmount fee = ledger().fee_for(EventCategory::EscrowLock);
    const TokenAmount balance = ledger().balance(me);
    TokenAmount cap = balance > fee ? balance - fee : TokenAmount{};
    if (!spec.max.is_zero()) cap = std::min(cap, spec.max);
    const TokenAmount next = lot.minimum_next_bid();
    if (cap < next) return;

    TokenAmount want = next;
    switch (spec.strategy) {
        case StrategyKind::Incremental:
            want = std::max(lot.highest ? lot.highest->amount + spec.step : lot.reserve, next);
            break;
        case StrategyKind::Limit: want = next; break;
        case StrategyKind::Sniper: want = cap; break;
        case StrategyKind::Manual: return;
    }
    apply_bid(lot_id, me, std::min(want, cap), now);
}

BidOutcome Simulation::apply_bid(LotId lot_id, const AccountId& bidder, TokenAmount amount, Tick now) {
    BidOutcome out;
    std::optional<AccountId> previous;
    try {
        const AuctionLot& before = engine_.lot(lot_id);
        if (before.highest) previous = before.highest->bidder;
        engine_.place_bid(lot_id, bidder, amount, now);
        out.accepted = true;
    } catch (const Error& e) {
        out.error = e.code();
        out.message = e.what();
        return out;
    }

    // Peak escrow per bidder: sum of standing high bids across open lots.
    std::map<AccountId, TokenAmount> locked;
    for (const auto& l : engine_.lots())
        if (l.state == LotState::Open && l.highest) locked[l.highest->bidder] += l.highest->amount;
    for (const auto& [who, amt] : locked)
        if (peak_locked_.contains(who)) peak_locked_[who] = std::max(peak_locked_[who], amt);

    if (previous && *previous != bidder) {
        auto it = bidder_index_.find(*previous);
        if (it != bidder_index_.end()) {
            const StrategyKind k = scenario_.bidders[it->second].strategy;
            const AuctionLot& lot = engine_.lot(lot_id);
            const Tick at = now + jitter();
            if ((k == StrategyKind::Incremental || k == StrategyKind::Limit) && at < lot.close_time)
                schedule(at, EventKind::BidderWake, it->second, lot_id);
        }
    }
    return out;
}

BidOutcome Simulation::submit_bid(LotId lot, const AccountId& bidder, TokenAmount amount) {
    pending_bids_.push_back({lot, bidder, amount, {}});
    const std::size_t index = pending_bids_.size() - 1;
    schedule(now_, EventKind::ExternalBid, index);
    run_until(now_);
    return pending_bids_[index].outcome;
}

std::optional<AccountId> Simulation::session_account(std::string_view token) const {
    if (token.empty()) return std::nullopt;
    for (std::size_t i = 0; i < scenario_.bidders.size(); ++i)
        if (scenario_.bidders[i].session == token) return bidder_accounts_[i];
    return std::nullopt;
}

std::vector<TimelineEntry> Simulation::timeline(const AccountId& account) const {
    if (account != agent_.wallet) return ledger().balance_timeline(account);
    std::set<AccountId> mine{agent_.wallet};
    for (const auto& o : engine_.orders())
        if (o.buyer == agent_.wallet) mine.insert(o.escrow);

    std::vector<TimelineEntry> out;
    TokenAmount balance;
    for (const LedgerEvent& e : ledger().log()) {
        if (e.is_annotation()) continue;
        const bool from_me = mine.contains(e.from);
        const bool to_me = mine.contains(e.to);
        if (!from_me && !to_me) continue;
        if (from_me && to_me && e.fee.is_zero()) continue;
        if (to_me) balance += e.amount;
        if (from_me) balance -= e.amount + e.fee;
        out.push_back({e.seq, e.time, balance, e.category});
    }
    return out;
}

// ---------------------------------------------------------------------------

ScenarioResult run_scenario(const Scenario& scenario, std::optional<std::filesystem::path> artifact_dir) {
    Simulation sim(scenario, std::move(artifact_dir));
    sim.run();
    ScenarioResult r;
    r.log.assign(sim.ledger().log().begin(), sim.ledger().log().end());
    r.log_hash = log_hash(r.log);
    r.robot_timeline = sim.robot_timeline();
    r.final_state = sim.agent();
    r.final_balance = sim.ledger().balance(sim.agent().wallet);
    r.outstanding_loans = sim.engine().outstanding_loans();
    r.cycles = sim.cycles();
    for (const auto& l : sim.engine().lots()) {
        if (l.state == LotState::Settled) ++r.sold;
        if (l.state == LotState::Unsold) ++r.unsold;
    }
    return r;
}

std::string timeline_csv(std::span<const TimelineEntry> timeline) {
    std::string out = "time,balance,category\n";
    for (const auto& e : timeline)
        out += std::to_string(e.time) + "," + e.balance_after.to_string() + "," + std::string(category_name(e.category)) + "\n";
    return out;
}

void write_run_outputs(const Simulation& sim, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream log(dir / "events.log", std::ios::binary);
        if (!log) throw Error(Errc::IoError, "cannot write " + (dir / "events.log").string());
        write_log(log, sim.ledger().log());
    }
    std::ofstream csv(dir / "timeline.csv", std::ios::binary);
    if (!csv) throw Error(Errc::IoError, "cannot write " + (dir / "timeline.csv").string());
    csv << timeline_csv(sim.robot_timeline());
}

bool ClosureTerms::holds() const {
    return funding + gross_sales == final_balance + platform_fees + network_fees + supply_payments + repayments;
}

ClosureTerms economic_closure(const ContractEngine& engine, const AccountId& robot) {
    std::set<AccountId> lot_escrows, order_escrows;
    for (const auto& l : engine.lots())
        if (l.seller == robot) lot_escrows.insert(l.escrow);
    for (const auto& o : engine.orders())
        if (o.buyer == robot) order_escrows.insert(o.escrow);

    ClosureTerms t;
    for (const LedgerEvent& e : engine.ledger().log()) {
        if (e.is_annotation()) continue;
        if (e.from == robot) t.network_fees += e.fee;
        if (e.to == robot && e.category == EventCategory::Funding) t.funding += e.amount;
        if (lot_escrows.contains(e.from) && (e.category == EventCategory::Sale || e.category == EventCategory::PlatformFee))
            t.gross_sales += e.amount;
        if (lot_escrows.contains(e.from) && e.category == EventCategory::PlatformFee) t.platform_fees += e.amount;
        if (e.from == robot && e.category == EventCategory::PlatformFee) t.platform_fees += e.amount;
        if (e.from == robot && e.category == EventCategory::NetworkFee) t.network_fees += e.amount;
        if (order_escrows.contains(e.from) && e.category == EventCategory::SupplyPurchase) t.supply_payments += e.amount;
        if (e.from == robot && e.category == EventCategory::LoanRepayment) t.repayments += e.amount;
    }
    t.final_balance = engine.ledger().balance(robot);
    return t;
}

}  // namespace easel
