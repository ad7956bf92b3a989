#include "easel/contracts.hpp"

#include <algorithm>

namespace easel {

std::string_view lot_state_name(LotState s) noexcept {
    switch (s) {
    case LotState::Created: return "Created";
    case LotState::Open: return "Open";
    case LotState::Settled: return "Settled";
    case LotState::Unsold: return "Unsold";
    case LotState::Cancelled: return "Cancelled";
    }
    return "Created";
}

std::string_view item_kind_name(ItemKind k) noexcept {
    switch (k) {
    case ItemKind::Canvas: return "Canvas";
    case ItemKind::Paint: return "Paint";
    case ItemKind::Brush: return "Brush";
    }
    return "Canvas";
}

ItemKind parse_item_kind(std::string_view name) {
    for (auto k : {ItemKind::Canvas, ItemKind::Paint, ItemKind::Brush})
        if (item_kind_name(k) == name) return k;
    throw Error(Errc::InvalidArgument, "unknown item kind '" + std::string(name) + "'");
}

std::string_view order_state_name(OrderState s) noexcept {
    switch (s) {
    case OrderState::Proposed: return "Proposed";
    case OrderState::Accepted: return "Accepted";
    case OrderState::Rejected: return "Rejected";
    case OrderState::Fulfilled: return "Fulfilled";
    case OrderState::Refunded: return "Refunded";
    }
    return "Proposed";
}

ContractEngine::ContractEngine(Ledger ledger, std::string_view platform_label) : ledger_(std::move(ledger)) {
    auto existing = ledger_.find(platform_label);
    platform_ = existing ? *existing : ledger_.create_account(platform_label);
}

// ---------------------------------------------------------------------------
// ownership tokens

const OwnershipToken& ContractEngine::mint_token(const AccountId& minter, const Sha256& artwork, Tick now) {
    if (!ledger_.has_account(minter)) throw Error(Errc::UnknownAccount, minter.hex());
    if (by_artwork_.contains(artwork)) throw Error(Errc::DuplicateArtwork, to_hex(artwork));
    OwnershipToken t;
    t.id = tokens_.size();
    t.artwork = artwork;
    t.owner = minter;
    t.provenance.emplace_back(now, minter);
    by_artwork_.emplace(artwork, t.id);
    tokens_.push_back(std::move(t));
    ledger_.note(minter, now, "mint-token id=" + std::to_string(tokens_.back().id) + " artwork=" + to_hex(artwork));
    return tokens_.back();
}

const OwnershipToken& ContractEngine::token(TokenId id) const {
    if (id >= tokens_.size()) throw Error(Errc::UnknownToken, std::to_string(id));
    return tokens_[id];
}

OwnershipToken& ContractEngine::token_mut(TokenId id) {
    if (id >= tokens_.size()) throw Error(Errc::UnknownToken, std::to_string(id));
    return tokens_[id];
}

// ---------------------------------------------------------------------------
// auctions

const AuctionLot& ContractEngine::lot(LotId id) const {
    if (id >= lots_.size()) throw Error(Errc::UnknownLot, std::to_string(id));
    return lots_[id];
}

AuctionLot& ContractEngine::lot_mut(LotId id) {
    if (id >= lots_.size()) throw Error(Errc::UnknownLot, std::to_string(id));
    return lots_[id];
}

const AuctionLot& ContractEngine::create_auction(TokenId token_id, const AccountId& seller, TokenAmount reserve,
                                                 TokenAmount min_increment, Tick duration, Tick now,
                                                 std::uint32_t platform_fee_bps) {
    OwnershipToken& t = token_mut(token_id);
    if (t.owner != seller) throw Error(Errc::NotOwner, "token " + std::to_string(token_id));
    if (t.locked) throw Error(Errc::TokenLocked, "token " + std::to_string(token_id));
    if (duration <= 0) throw Error(Errc::InvalidArgument, "auction duration must be positive");
    if (min_increment.is_zero()) throw Error(Errc::InvalidArgument, "min_increment must be at least one base unit");
    if (platform_fee_bps > 10'000) throw Error(Errc::InvalidArgument, "platform fee above 100%");

    AuctionLot l;
    l.id = lots_.size();
    l.token = token_id;
    l.seller = seller;
    l.reserve = reserve;
    l.min_increment = min_increment;
    l.open_time = now;
    l.close_time = now + duration;
    l.platform_fee_bps = platform_fee_bps;
    l.escrow = ledger_.create_account("escrow/lot/" + std::to_string(l.id), now);
    t.locked = true;
    lots_.push_back(std::move(l));
    return lots_.back();
}

const AuctionLot& ContractEngine::start_auction(LotId lot_id, Tick now) {
    AuctionLot& l = lot_mut(lot_id);
    if (l.state != LotState::Created) throw Error(Errc::NotOpen, "lot " + std::to_string(lot_id) + " already started");
    const Tick duration = l.close_time - l.open_time;
    l.open_time = now;
    l.close_time = now + duration;
    l.state = LotState::Open;
    ledger_.note(l.seller, now,
                 "open-auction lot=" + std::to_string(l.id) + " token=" + std::to_string(l.token) +
                     " reserve=" + l.reserve.to_string() + " close=" + std::to_string(l.close_time));
    return l;
}

const AuctionLot& ContractEngine::cancel_auction(LotId lot_id, Tick now) {
    AuctionLot& l = lot_mut(lot_id);
    if (l.state != LotState::Created) throw Error(Errc::NotOpen, "only Created lots can be cancelled");
    l.state = LotState::Cancelled;
    token_mut(l.token).locked = false;
    ledger_.note(l.seller, now, "cancel-auction lot=" + std::to_string(l.id));
    return l;
}

const AuctionLot& ContractEngine::open_auction(TokenId token_id, const AccountId& seller, TokenAmount reserve,
                                               TokenAmount min_increment, Tick duration, Tick now,
                                               std::uint32_t platform_fee_bps) {
    const LotId id = create_auction(token_id, seller, reserve, min_increment, duration, now, platform_fee_bps).id;
    return start_auction(id, now);
}

Bid ContractEngine::place_bid(LotId lot_id, const AccountId& bidder, TokenAmount amount, Tick time) {
    AuctionLot& l = lot_mut(lot_id);
    if (l.state != LotState::Open || time < l.open_time || time >= l.close_time)
        throw Error(Errc::AuctionClosed, "lot " + std::to_string(lot_id));
    if (!ledger_.has_account(bidder)) throw Error(Errc::UnknownAccount, bidder.hex());
    if (bidder == l.seller) throw Error(Errc::SelfBid);
    if (amount < l.minimum_next_bid())
        throw Error(Errc::BidTooLow, "minimum " + l.minimum_next_bid().to_string() + ", got " + amount.to_string());
    const TokenAmount need = amount + ledger_.fee_for(EventCategory::EscrowLock);
    if (ledger_.balance(bidder) < need)
        throw Error(Errc::InsufficientFunds, "bid needs " + need.to_string());

    const std::string tag = "lot=" + std::to_string(lot_id);
    ledger_.transfer(bidder, l.escrow, amount, EventCategory::EscrowLock, time, "bid " + tag);
    if (l.highest) {
        ledger_.transfer(l.escrow, l.highest->bidder, l.highest->amount, EventCategory::EscrowRelease, time,
                         "outbid-refund " + tag, TokenAmount{});
    }
    Bid b{bidder, amount, time};
    l.bids.push_back(b);
    l.highest = b;
    return b;
}

SettlementReport ContractEngine::close_auction(LotId lot_id, Tick time) {
    AuctionLot& l = lot_mut(lot_id);
    if (l.state != LotState::Open) throw Error(Errc::NotOpen, "lot " + std::to_string(lot_id));
    if (time < l.close_time) throw Error(Errc::TooEarly, "closes at " + std::to_string(l.close_time));

    SettlementReport report;
    report.lot = lot_id;
    OwnershipToken& t = token_mut(l.token);
    const std::string tag = "lot=" + std::to_string(lot_id);
    if (!l.highest) {
        l.state = LotState::Unsold;
        t.locked = false;
        ledger_.note(l.seller, time, "unsold " + tag);
        report.state = LotState::Unsold;
        return report;
    }

    const TokenAmount price = l.highest->amount;
    const TokenAmount seller_share = price * (10'000 - l.platform_fee_bps) / 10'000;
    const TokenAmount cut = price - seller_share;
    if (!seller_share.is_zero())
        ledger_.transfer(l.escrow, l.seller, seller_share, EventCategory::Sale, time, "sale " + tag, TokenAmount{});
    if (!cut.is_zero())
        ledger_.transfer(l.escrow, platform_, cut, EventCategory::PlatformFee, time, "platform-cut " + tag,
                         TokenAmount{});
    t.owner = l.highest->bidder;
    t.provenance.emplace_back(time, l.highest->bidder);
    t.locked = false;
    l.state = LotState::Settled;

    report.state = LotState::Settled;
    report.winner = l.highest->bidder;
    report.price = price;
    report.platform_fee = cut;
    report.seller_proceeds = seller_share;
    return report;
}

// ---------------------------------------------------------------------------
// shop orders

const ShopOrder& ContractEngine::order(OrderId id) const {
    if (id >= orders_.size()) throw Error(Errc::UnknownOrder, std::to_string(id));
    return orders_[id];
}

ShopOrder& ContractEngine::order_mut(OrderId id) {
    if (id >= orders_.size()) throw Error(Errc::UnknownOrder, std::to_string(id));
    return orders_[id];
}

const ShopOrder& ContractEngine::propose_order(const AccountId& buyer, const AccountId& shop,
                                               std::vector<OrderLine> composition, TokenAmount amount, Tick deadline,
                                               Tick now) {
    if (!ledger_.has_account(buyer)) throw Error(Errc::UnknownAccount, buyer.hex());
    if (!ledger_.has_account(shop)) throw Error(Errc::UnknownAccount, shop.hex());
    if (composition.empty()) throw Error(Errc::EmptyOrder);
    for (const auto& line : composition)
        if (line.quantity <= 0) throw Error(Errc::InvalidArgument, "order quantities must be positive");
    if (amount.is_zero()) throw Error(Errc::ZeroAmount);
    if (ledger_.balance(buyer) < amount + ledger_.fee_for(EventCategory::EscrowLock))
        throw Error(Errc::InsufficientFunds, "order needs " + amount.to_string());

    ShopOrder o;
    o.id = orders_.size();
    o.buyer = buyer;
    o.shop = shop;
    o.composition = std::move(composition);
    o.amount = amount;
    o.deadline = deadline;
    o.escrow = ledger_.create_account("escrow/order/" + std::to_string(o.id), now);
    std::string memo = "propose-order id=" + std::to_string(o.id) + " amount=" + amount.to_string();
    for (const auto& line : o.composition)
        memo += " " + std::string(item_kind_name(line.kind)) + "x" + std::to_string(line.quantity);
    orders_.push_back(std::move(o));
    ledger_.note(buyer, now, memo);
    return orders_.back();
}

const ShopOrder& ContractEngine::shop_respond(OrderId order_id, bool accept, Tick now) {
    ShopOrder& o = order_mut(order_id);
    if (o.state != OrderState::Proposed) throw Error(Errc::NotProposed, "order " + std::to_string(order_id));
    const std::string tag = "order=" + std::to_string(order_id);
    if (accept) {
        ledger_.transfer(o.buyer, o.escrow, o.amount, EventCategory::EscrowLock, now, "order-escrow " + tag);
        o.state = OrderState::Accepted;
    } else {
        ledger_.note(o.shop, now, "reject " + tag);
        o.state = OrderState::Rejected;
    }
    return o;
}

FulfillResult ContractEngine::fulfill_order(OrderId order_id, Tick now) {
    ShopOrder& o = order_mut(order_id);
    if (o.state != OrderState::Accepted) throw Error(Errc::NotAccepted, "order " + std::to_string(order_id));
    const std::string tag = "order=" + std::to_string(order_id);
    if (now > o.deadline) {
        ledger_.transfer(o.escrow, o.buyer, o.amount, EventCategory::EscrowRelease, now, "refund " + tag,
                         TokenAmount{});
        o.state = OrderState::Refunded;
        return {o, {}};
    }
    ledger_.transfer(o.escrow, o.shop, o.amount, EventCategory::SupplyPurchase, now, "purchase " + tag,
                     TokenAmount{});
    o.state = OrderState::Fulfilled;
    return {o, o.composition};
}

const ShopOrder& ContractEngine::expire_order(OrderId order_id, Tick now) {
    ShopOrder& o = order_mut(order_id);
    if (o.terminal()) throw Error(Errc::NotAccepted, "order " + std::to_string(order_id) + " already terminal");
    if (now <= o.deadline) throw Error(Errc::TooEarly, "deadline " + std::to_string(o.deadline));
    const std::string tag = "order=" + std::to_string(order_id);
    if (o.state == OrderState::Proposed) {
        ledger_.note(o.buyer, now, "expired " + tag);
        o.state = OrderState::Rejected;
    } else {
        ledger_.transfer(o.escrow, o.buyer, o.amount, EventCategory::EscrowRelease, now, "refund " + tag,
                         TokenAmount{});
        o.state = OrderState::Refunded;
    }
    return o;
}

// ---------------------------------------------------------------------------
// loans

void ContractEngine::record_loan(const AccountId& investor, TokenAmount principal) {
    if (!ledger_.has_account(investor)) throw Error(Errc::UnknownAccount, investor.hex());
    if (principal.is_zero()) throw Error(Errc::ZeroAmount);
    loans_.push_back({investor, principal, TokenAmount{}});
}

std::vector<LedgerEvent> ContractEngine::repay_loans(const AccountId& payer, TokenAmount available, Tick now) {
    std::vector<LedgerEvent> out;
    available = std::min(available, ledger_.balance(payer));
    const TokenAmount fee = ledger_.fee_for(EventCategory::LoanRepayment);
    for (auto& loan : loans_) {
        if (available <= fee) break;
        const TokenAmount pay = std::min(loan.outstanding(), available - fee);
        if (pay.is_zero()) continue;
        out.push_back(ledger_.transfer(payer, loan.investor, pay, EventCategory::LoanRepayment, now, "loan-repayment"));
        loan.repaid += pay;
        available -= pay + fee;
    }
    return out;
}

TokenAmount ContractEngine::outstanding_loans() const {
    TokenAmount sum;
    for (const auto& loan : loans_) sum += loan.outstanding();
    return sum;
}

TokenAmount ContractEngine::expected_escrow_total() const {
    TokenAmount sum;
    for (const auto& l : lots_)
        if (l.state == LotState::Open && l.highest) sum += l.highest->amount;
    for (const auto& o : orders_)
        if (o.state == OrderState::Accepted) sum += o.amount;
    return sum;
}

TokenAmount ContractEngine::actual_escrow_total() const {
    TokenAmount sum;
    for (const auto& l : lots_) sum += ledger_.balance(l.escrow);
    for (const auto& o : orders_) sum += ledger_.balance(o.escrow);
    return sum;
}

}  // namespace easel
