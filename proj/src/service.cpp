#include "easel/service.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <shared_mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "easel/error.hpp"

namespace easel {

using nlohmann::json;

namespace {

json lot_json(const AuctionLot& l, const Ledger& ledger) {
    json j{{"id", l.id},
           {"token", l.token},
           {"state", lot_state_name(l.state)},
           {"seller", l.seller.hex()},
           {"seller_label", ledger.label_of(l.seller)},
           {"reserve", l.reserve.to_string()},
           {"min_increment", l.min_increment.to_string()},
           {"open_time", l.open_time},
           {"close_time", l.close_time},
           {"bid_count", l.bids.size()},
           {"highest", nullptr}};
    if (l.highest)
        j["highest"] = {{"bidder", l.highest->bidder.hex()},
                        {"bidder_label", ledger.label_of(l.highest->bidder)},
                        {"amount", l.highest->amount.to_string()},
                        {"time", l.highest->time}};
    if (!l.terminal()) j["minimum_next_bid"] = l.minimum_next_bid().to_string();
    return j;
}

json event_json(const LedgerEvent& e) {
    return {{"seq", e.seq},
            {"time", e.time},
            {"from", e.from.hex()},
            {"to", e.to.hex()},
            {"amount", e.amount.to_string()},
            {"fee", e.fee.to_string()},
            {"category", category_name(e.category)},
            {"memo", e.memo}};
}

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
    reply(res, status, json{{"error", code}, {"message", message}});
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
    if (s.empty() || s.size() > 19) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

}  // namespace

struct GatewayService::Impl {
    std::unique_ptr<Simulation> sim;
    ServiceOptions options;
    mutable std::shared_mutex mu;

    std::mutex feed_mu;
    std::condition_variable feed_cv;
    std::uint64_t published = 0;  // log length visible to pollers

    httplib::Server server;
    std::thread server_thread;
    std::thread pacer;
    std::atomic<bool> stopping{false};
    bool finished = false;
    std::string outcome = "running";

    void publish() {
        std::lock_guard lk(feed_mu);
        published = sim->ledger().log().size();
        feed_cv.notify_all();
    }

    // Caller holds `mu` exclusively.
    void advance_locked(Tick ticks) {
        if (finished) return;
        if (sim->drained()) {
            finished = true;
            try {
                sim->check_complete();
                outcome = "complete";
            } catch (const Error& e) {
                outcome = e.what();
            }
            return;
        }
        sim->run_until(sim->now() + ticks);
    }

    void routes();
};

void GatewayService::Impl::routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Authorization, Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/status", [this](const httplib::Request&, httplib::Response& res) {
        std::shared_lock lk(mu);
        const AgentState& a = sim->agent();
        reply(res, 200,
              json{{"now", sim->now()},
                   {"stage", stage_name(a.stage)},
                   {"paintings_completed", a.paintings_completed},
                   {"paintings_target", sim->scenario().paintings_target},
                   {"robot", a.wallet.hex()},
                   {"robot_balance", sim->ledger().balance(a.wallet).to_string()},
                   {"events", sim->ledger().log().size()},
                   {"finished", finished},
                   {"outcome", outcome}});
    });

    server.Get("/auctions", [this](const httplib::Request&, httplib::Response& res) {
        std::shared_lock lk(mu);
        json lots = json::array();
        for (const auto& l : sim->engine().lots()) lots.push_back(lot_json(l, sim->ledger()));
        reply(res, 200, json{{"now", sim->now()}, {"lots", lots}});
    });

    server.Get(R"(/auctions/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
        std::shared_lock lk(mu);
        const auto id = parse_u64(req.matches[1]);
        if (!id || *id >= sim->engine().lots().size())
            return reply_error(res, 404, errc_name(Errc::UnknownLot), "no lot " + std::string(req.matches[1]));
        const AuctionLot& l = sim->engine().lot(*id);
        json j = lot_json(l, sim->ledger());
        json bids = json::array();
        for (const Bid& b : l.bids)
            bids.push_back({{"bidder", b.bidder.hex()},
                            {"bidder_label", sim->ledger().label_of(b.bidder)},
                            {"amount", b.amount.to_string()},
                            {"time", b.time}});
        j["bids"] = bids;
        j["now"] = sim->now();
        for (const CycleRecord& c : sim->cycles()) {
            if (c.lot != l.id) continue;
            j["topic"] = {{"date", format_date(c.topic_date)}, {"keyword", c.keyword}, {"glyphs", c.glyphs}};
            j["artwork"] = to_hex(c.painted_hash);
            j["preview_svg"] = c.strokes_svg;
        }
        reply(res, 200, j);
    });

    server.Post(R"(/auctions/(\d+)/bids)", [this](const httplib::Request& req, httplib::Response& res) {
        std::string token;
        const std::string auth = req.get_header_value("Authorization");
        if (auth.rfind("Bearer ", 0) == 0) token = auth.substr(7);
        TokenAmount amount;
        try {
            const json body = json::parse(req.body);
            if (!body.is_object() || !body.contains("amount") || !body["amount"].is_string())
                return reply_error(res, 400, errc_name(Errc::InvalidArgument), "body must be {\"amount\": \"<base units>\"}");
            amount = TokenAmount::parse(body["amount"].get<std::string>());
        } catch (const json::exception& e) {
            return reply_error(res, 400, errc_name(Errc::InvalidArgument), e.what());
        } catch (const Error& e) {
            return reply_error(res, 400, errc_name(e.code()), e.what());
        }

        std::unique_lock lk(mu);
        const auto account = sim->session_account(token);
        if (!account) return reply_error(res, 401, "UnknownSession", "unknown or missing session token");
        const auto id = parse_u64(req.matches[1]);
        if (!id || *id >= sim->engine().lots().size())
            return reply_error(res, 404, errc_name(Errc::UnknownLot), "no lot " + std::string(req.matches[1]));
        const BidOutcome out = sim->submit_bid(*id, *account, amount);
        json lot = lot_json(sim->engine().lot(*id), sim->ledger());
        lk.unlock();
        publish();
        if (out.accepted) return reply(res, 200, json{{"accepted", true}, {"lot", lot}});
        const Errc code = out.error.value_or(Errc::InvalidArgument);
        reply(res, code == Errc::UnknownLot ? 404 : 409,
              json{{"accepted", false}, {"error", errc_name(code)}, {"message", out.message}, {"lot", lot}});
    });

    server.Get(R"(/timeline/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        std::shared_lock lk(mu);
        const std::string key = req.matches[1];
        std::optional<AccountId> account = sim->ledger().find(key);
        if (!account) {
            try {
                const AccountId id = AccountId::from_hex(key);
                if (sim->ledger().has_account(id)) account = id;
            } catch (const Error&) {
            }
        }
        if (!account) return reply_error(res, 404, errc_name(Errc::UnknownAccount), "no account " + key);
        json points = json::array();
        for (const TimelineEntry& e : sim->timeline(*account))
            points.push_back({{"seq", e.seq},
                              {"time", e.time},
                              {"balance", e.balance_after.to_string()},
                              {"category", category_name(e.category)}});
        reply(res, 200,
              json{{"account", account->hex()}, {"label", sim->ledger().label_of(*account)}, {"points", points}});
    });

    server.Get("/events", [this](const httplib::Request& req, httplib::Response& res) {
        std::uint64_t since = 0;
        int wait_ms = options.max_poll_ms;
        if (req.has_param("since")) {
            const auto v = parse_u64(req.get_param_value("since"));
            if (!v) return reply_error(res, 400, errc_name(Errc::InvalidArgument), "since must be a sequence number");
            since = *v;
        }
        if (req.has_param("wait_ms")) {
            const auto v = parse_u64(req.get_param_value("wait_ms"));
            if (!v) return reply_error(res, 400, errc_name(Errc::InvalidArgument), "wait_ms must be a number");
            wait_ms = static_cast<int>(std::min<std::uint64_t>(*v, static_cast<std::uint64_t>(options.max_poll_ms)));
        }
        {
            std::unique_lock lk(feed_mu);
            feed_cv.wait_for(lk, std::chrono::milliseconds(wait_ms),
                             [&] { return published > since || stopping.load(); });
        }
        std::shared_lock lk(mu);
        const auto log = sim->ledger().log();
        json events = json::array();
        for (std::size_t i = static_cast<std::size_t>(std::min<std::uint64_t>(since, log.size())); i < log.size(); ++i)
            events.push_back(event_json(log[i]));
        reply(res, 200, json{{"events", events}, {"next", log.size()}, {"now", sim->now()}, {"finished", finished}});
    });
}

GatewayService::GatewayService(std::unique_ptr<Simulation> sim, ServiceOptions options)
    : impl_(std::make_unique<Impl>()) {
    impl_->sim = std::move(sim);
    impl_->options = options;
    impl_->publish();
    impl_->routes();
}

GatewayService::~GatewayService() { stop(); }

int GatewayService::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw Error(Errc::IoError, "cannot bind " + host + ":" + std::to_string(port));
    impl_->server_thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();

    if (impl_->options.ticks_per_second > 0) {
        impl_->pacer = std::thread([this] {
            using clock = std::chrono::steady_clock;
            const auto t0 = clock::now();
            Tick advanced = 0;
            while (!impl_->stopping.load()) {
                std::this_thread::sleep_for(std::chrono::milliseconds(10));
                const double elapsed = std::chrono::duration<double>(clock::now() - t0).count();
                const Tick due = static_cast<Tick>(elapsed * impl_->options.ticks_per_second) - advanced;
                if (due <= 0) continue;
                advance(due);
                advanced += due;
                if (finished()) break;
            }
        });
    }
    return bound;
}

void GatewayService::advance(Tick ticks) {
    {
        std::unique_lock lk(impl_->mu);
        impl_->advance_locked(ticks);
    }
    impl_->publish();
}

bool GatewayService::finished() const {
    std::shared_lock lk(impl_->mu);
    return impl_->finished;
}

void GatewayService::wait() {
    if (impl_->server_thread.joinable()) impl_->server_thread.join();
}

void GatewayService::stop() {
    if (!impl_) return;
    impl_->stopping = true;
    {
        std::lock_guard lk(impl_->feed_mu);
        impl_->feed_cv.notify_all();
    }
    if (impl_->pacer.joinable()) impl_->pacer.join();
    impl_->server.stop();
    if (impl_->server_thread.joinable()) impl_->server_thread.join();
}

const Simulation& GatewayService::sim_for_reading() const { return *impl_->sim; }
void GatewayService::lock_shared() const { impl_->mu.lock_shared(); }
void GatewayService::unlock_shared() const { impl_->mu.unlock_shared(); }

}  // namespace easel
