#pragma once

// Independent re-implementations used as test oracles. Shared by the unit
// tests and the acceptance binary, so no doctest here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "easel/contracts.hpp"
#include "easel/motion.hpp"
#include "easel/error.hpp"

namespace easel::oracle {

// ---------------------------------------------------------------------------
// English auction: a plain fold over the bid attempts.

struct BidAttempt {
    int bidder = 0;  // index into the bidder list; -1 means the seller
    std::uint64_t amount = 0;
    Tick time = 0;
};

struct AuctionSchedule {
    std::uint64_t reserve = 0;
    std::uint64_t increment = 1;
    std::uint64_t fee = 0;  // per EscrowLock transfer
    std::uint32_t bps = 250;
    Tick open = 0;
    Tick close = 0;
    std::vector<std::uint64_t> budgets;
    std::vector<BidAttempt> attempts;
};

struct AuctionOutcome {
    std::optional<int> winner;
    std::uint64_t price = 0;
    std::vector<std::uint64_t> final_balances;  // bidders, after settlement
    std::uint64_t seller_gain = 0;
    std::uint64_t platform_gain = 0;
    std::vector<bool> accepted;  // per attempt
};

inline AuctionOutcome fold_auction(const AuctionSchedule& s) {
    AuctionOutcome out;
    std::vector<std::uint64_t> bal = s.budgets;
    std::optional<int> top;
    std::uint64_t top_amount = 0;
    for (const BidAttempt& a : s.attempts) {
        bool ok = a.bidder >= 0 && a.time >= s.open && a.time < s.close;
        if (ok) ok = top ? a.amount >= top_amount + s.increment : a.amount >= s.reserve;
        if (ok) ok = bal[a.bidder] >= a.amount + s.fee;
        out.accepted.push_back(ok);
        if (!ok) continue;
        bal[a.bidder] -= a.amount + s.fee;
        if (top) bal[*top] += top_amount;
        top = a.bidder;
        top_amount = a.amount;
    }
    out.winner = top;
    out.price = top ? top_amount : 0;
    if (top) {
        // seller share rounds down; the remainder is the platform's
        const unsigned __int128 share = static_cast<unsigned __int128>(top_amount) * (10000 - s.bps) / 10000;
        out.seller_gain = static_cast<std::uint64_t>(share);
        out.platform_gain = top_amount - out.seller_gain;
    }
    out.final_balances = bal;
    return out;
}

inline AuctionSchedule random_schedule(std::mt19937_64& rng) {
    AuctionSchedule s;
    s.reserve = rng() % 50;
    s.increment = 1 + rng() % 10;
    s.fee = rng() % 3;
    s.bps = static_cast<std::uint32_t>(rng() % 1001);
    s.open = static_cast<Tick>(rng() % 20);
    s.close = s.open + 1 + static_cast<Tick>(rng() % 100);
    const int bidders = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < bidders; ++i) s.budgets.push_back(rng() % 300);
    const int n = static_cast<int>(rng() % 25);
    std::vector<Tick> times;
    for (int i = 0; i < n; ++i) times.push_back(static_cast<Tick>(rng() % static_cast<std::uint64_t>(s.close + 20)));
    std::sort(times.begin(), times.end());
    for (int i = 0; i < n; ++i) {
        BidAttempt a;
        a.bidder = rng() % 10 == 0 ? -1 : static_cast<int>(rng() % static_cast<std::uint64_t>(bidders));
        a.amount = rng() % 200;
        a.time = times[static_cast<std::size_t>(i)];
        s.attempts.push_back(a);
    }
    return s;
}

struct AuctionCheck {
    bool ok = true;
    std::string why;
};

// Runs the schedule through the contract engine and compares with the fold.
inline AuctionCheck check_auction(const AuctionSchedule& s) {
    AuctionCheck r;
    auto fail = [&](const std::string& w) {
        if (r.ok) r.why = w;
        r.ok = false;
    };
    LedgerConfig cfg;
    cfg.fee_schedule[EventCategory::EscrowLock] = TokenAmount{s.fee};
    ContractEngine eng{Ledger(cfg)};
    Ledger& L = eng.ledger();
    const AccountId seller = L.create_account("seller");
    std::vector<AccountId> ids;
    for (std::size_t i = 0; i < s.budgets.size(); ++i) {
        ids.push_back(L.create_account("bidder-" + std::to_string(i)));
        if (s.budgets[i] > 0) L.mint(ids.back(), TokenAmount{s.budgets[i]}, EventCategory::Funding, 0);
    }
    L.seal_genesis(0);
    Sha256 art{};
    art[0] = 1;
    const TokenId tok = eng.mint_token(seller, art, s.open).id;
    const LotId lot = eng.open_auction(tok, seller, TokenAmount{s.reserve}, TokenAmount{s.increment},
                                       s.close - s.open, s.open, s.bps)
                          .id;
    const AuctionOutcome want = fold_auction(s);
    for (std::size_t i = 0; i < s.attempts.size(); ++i) {
        const BidAttempt& a = s.attempts[i];
        bool accepted = true;
        try {
            eng.place_bid(lot, a.bidder < 0 ? seller : ids[static_cast<std::size_t>(a.bidder)], TokenAmount{a.amount},
                          a.time);
        } catch (const Error&) {
            accepted = false;
        }
        if (accepted != want.accepted[i]) fail("attempt " + std::to_string(i) + " acceptance differs");
        if (eng.actual_escrow_total() != eng.expected_escrow_total()) fail("escrow mismatch mid-auction");
    }
    const SettlementReport rep = eng.close_auction(lot, s.close);
    if (want.winner) {
        if (rep.state != LotState::Settled || !rep.winner || *rep.winner != ids[static_cast<std::size_t>(*want.winner)])
            fail("winner differs");
        if (rep.price != TokenAmount{want.price}) fail("price differs");
        if (eng.token(tok).owner != ids[static_cast<std::size_t>(*want.winner)]) fail("token not transferred");
        if (eng.token(tok).provenance.size() != 2) fail("provenance length");
    } else {
        if (rep.state != LotState::Unsold || eng.token(tok).owner != seller) fail("unsold lot handled wrongly");
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (L.balance(ids[i]) != TokenAmount{want.final_balances[i]}) fail("refund for bidder " + std::to_string(i));
    if (L.balance(seller) != TokenAmount{want.seller_gain}) fail("seller proceeds");
    if (L.balance(eng.platform()) != TokenAmount{want.platform_gain}) fail("platform cut");
    if (!L.balance(eng.lot(lot).escrow).is_zero()) fail("escrow not drained");
    return r;
}

// ---------------------------------------------------------------------------
// Shop order protocol: exhaustive interleavings on a single order.

enum class ShopOp { Propose, Accept, Reject, Fulfill, Timeout };
inline constexpr ShopOp kShopOps[] = {ShopOp::Propose, ShopOp::Accept, ShopOp::Reject, ShopOp::Fulfill,
                                      ShopOp::Timeout};

struct ModelCheckResult {
    std::uint64_t sequences = 0;
    std::uint64_t violations = 0;
    std::string first_violation;
};

// Reference transition table. nullopt means the operation must be refused.
inline std::optional<OrderState> shop_model(std::optional<OrderState> s, ShopOp op, bool past_deadline) {
    if (op == ShopOp::Propose) return s ? std::nullopt : std::optional(OrderState::Proposed);
    if (!s) return std::nullopt;
    switch (op) {
    case ShopOp::Accept:
    case ShopOp::Reject:
        if (*s != OrderState::Proposed) return std::nullopt;
        return op == ShopOp::Accept ? OrderState::Accepted : OrderState::Rejected;
    case ShopOp::Fulfill:
        if (*s != OrderState::Accepted) return std::nullopt;
        return past_deadline ? OrderState::Refunded : OrderState::Fulfilled;
    case ShopOp::Timeout:
        if (*s == OrderState::Proposed) return OrderState::Rejected;
        if (*s == OrderState::Accepted) return OrderState::Refunded;
        return std::nullopt;
    default: return std::nullopt;
    }
}

inline std::string op_trace(const std::vector<ShopOp>& ops) {
    static const char* names[] = {"propose", "accept", "reject", "fulfill", "timeout"};
    std::string t;
    for (ShopOp op : ops) t += std::string(t.empty() ? "" : ",") + names[static_cast<int>(op)];
    return t;
}

inline void check_shop_sequence(const std::vector<ShopOp>& ops, ModelCheckResult& res) {
    constexpr std::uint64_t kAmount = 700, kFee = 3, kFund = 1000;
    constexpr Tick kDeadline = 100;
    LedgerConfig cfg;
    cfg.fee_schedule[EventCategory::EscrowLock] = TokenAmount{kFee};
    ContractEngine eng{Ledger(cfg)};
    Ledger& L = eng.ledger();
    const AccountId buyer = L.create_account("buyer");
    const AccountId shop = L.create_account("shop");
    L.mint(buyer, TokenAmount{kFund}, EventCategory::Funding, 0);
    L.seal_genesis(0);

    std::optional<OrderState> model;
    bool past = false;
    bool was_accepted = false;
    Tick now = 1;
    auto violate = [&](const std::string& what) {
        if (res.violations++ == 0) res.first_violation = op_trace(ops) + ": " + what;
    };
    for (ShopOp op : ops) {
        const auto expect = shop_model(model, op, past);
        bool refused = false;
        const Sha256 before = L.state_hash();
        try {
            switch (op) {
            case ShopOp::Propose:
                if (!eng.orders().empty()) throw Error(Errc::InvalidArgument, "single-order model");
                eng.propose_order(buyer, shop, {{ItemKind::Canvas, 1}}, TokenAmount{kAmount}, kDeadline, now);
                break;
            case ShopOp::Accept: eng.shop_respond(0, true, now); break;
            case ShopOp::Reject: eng.shop_respond(0, false, now); break;
            case ShopOp::Fulfill: eng.fulfill_order(0, now); break;
            case ShopOp::Timeout:
                if (!past) now = kDeadline + 1;
                past = true;
                eng.expire_order(0, now);
                break;
            }
        } catch (const Error&) {
            refused = true;
            if (L.state_hash() != before && op != ShopOp::Propose) violate("refused op changed balances");
        }
        if (op == ShopOp::Timeout) past = true;
        if (refused != !expect.has_value()) {
            violate(refused ? "valid op refused" : "invalid op accepted");
            return;
        }
        if (expect) model = expect;
        if (model == OrderState::Accepted) was_accepted = true;
        const auto actual = eng.orders().empty() ? std::nullopt : std::optional(eng.orders()[0].state);
        if (actual != model) {
            violate("state diverged from the model");
            return;
        }
        const TokenAmount escrow = eng.orders().empty() ? TokenAmount{} : L.balance(eng.orders()[0].escrow);
        if (escrow != (model == OrderState::Accepted ? TokenAmount{kAmount} : TokenAmount{})) violate("escrow balance");
        if (L.total_supply() != TokenAmount{kFund}) violate("supply changed");
        ++now;
    }
    // escrow released exactly once iff funds were ever locked
    int releases = 0;
    if (!eng.orders().empty()) {
        const AccountId esc = eng.orders()[0].escrow;
        for (const auto& ev : L.log())
            if (ev.from == esc && !ev.amount.is_zero()) ++releases;
    }
    const bool terminal = model && (*model == OrderState::Fulfilled || *model == OrderState::Refunded ||
                                    *model == OrderState::Rejected);
    if (terminal && was_accepted && releases != 1) violate("escrow released " + std::to_string(releases) + " times");
    if (!(terminal && was_accepted) && releases != 0) violate("escrow released without a terminal accept");
    if (model == OrderState::Refunded && L.balance(buyer) != TokenAmount{kFund - kFee}) violate("refund incomplete");
    if (model == OrderState::Fulfilled && L.balance(shop) != TokenAmount{kAmount}) violate("shop not paid");
}

inline ModelCheckResult model_check_shop(int depth) {
    ModelCheckResult res;
    std::vector<ShopOp> ops;
    auto rec = [&](auto& self, int remaining) -> void {
        check_shop_sequence(ops, res);
        ++res.sequences;
        if (remaining == 0) return;
        for (ShopOp op : kShopOps) {
            ops.push_back(op);
            self(self, remaining - 1);
            ops.pop_back();
        }
    };
    rec(rec, depth);
    return res;
}

// ---------------------------------------------------------------------------
// Motion: closed-form rest-to-rest durations and finite-difference limits.

// Written independently of segment_duration().
inline double closed_form(double length, double v, double a) {
    if (length == 0) return 0;
    return length >= v * v / a ? length / v + v / a : 2 * std::sqrt(length / a);
}

// Sum of closed-form durations over the legs the program implies.
inline double expected_duration(const PaintProgram& p, const MotionLimits& lim) {
    const Vec3 lift{0, 0, p.z_hover};
    double total = 0;
    Vec3 at = p.commands.front().points.front() + lift;
    auto leg = [&](Vec3 to) {
        total += closed_form(norm(to - at), lim.v_max, lim.a_max);
        at = to;
    };
    for (const auto& c : p.commands) {
        if (c.kind == CommandKind::DipAt) {
            leg(c.points[0] + lift);
            leg(c.points[0]);
            leg(c.points[0] + lift);
        } else if (c.kind == CommandKind::StrokeThrough) {
            for (std::size_t i = 1; i < c.points.size(); ++i) leg(c.points[i]);
        } else {
            leg(c.points[0]);
        }
    }
    return total;
}

struct LimitReport {
    double worst_speed = 0;
    double worst_accel = 0;
    bool increasing = true;
};

inline LimitReport finite_differences(const Trajectory& t) {
    LimitReport r;
    const auto& w = t.waypoints;
    for (std::size_t i = 1; i < w.size(); ++i) {
        const double dt = w[i].t - w[i - 1].t;
        if (!(dt > 0)) r.increasing = false;
        r.worst_speed = std::max(r.worst_speed, norm(w[i].position - w[i - 1].position) / dt);
    }
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const double dt0 = w[i].t - w[i - 1].t, dt1 = w[i + 1].t - w[i].t;
        const Vec3 v0 = (w[i].position - w[i - 1].position) * (1 / dt0);
        const Vec3 v1 = (w[i + 1].position - w[i].position) * (1 / dt1);
        r.worst_accel = std::max(r.worst_accel, norm(v1 - v0) / ((dt0 + dt1) / 2));
    }
    return r;
}

}  // namespace easel::oracle
