#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "easel/ledger.hpp"

namespace easel {

using TokenId = std::uint64_t;
using LotId = std::uint64_t;
using OrderId = std::uint64_t;

struct OwnershipToken {
    TokenId id = 0;
    Sha256 artwork{};
    AccountId owner;
    std::vector<std::pair<Tick, AccountId>> provenance;  // first entry is the minter
    bool locked = false;
};

enum class LotState { Created, Open, Settled, Unsold, Cancelled };
std::string_view lot_state_name(LotState s) noexcept;

struct Bid {
    AccountId bidder;
    TokenAmount amount;
    Tick time = 0;
};

struct AuctionLot {
    LotId id = 0;
    TokenId token = 0;
    AccountId seller;
    AccountId escrow;
    TokenAmount reserve;
    TokenAmount min_increment;
    Tick open_time = 0;
    Tick close_time = 0;
    LotState state = LotState::Created;
    std::vector<Bid> bids;
    std::optional<Bid> highest;
    std::uint32_t platform_fee_bps = 250;

    bool terminal() const {
        return state == LotState::Settled || state == LotState::Unsold || state == LotState::Cancelled;
    }
    // Smallest amount the next bid must reach.
    TokenAmount minimum_next_bid() const { return highest ? highest->amount + min_increment : reserve; }
};

struct SettlementReport {
    LotId lot = 0;
    LotState state = LotState::Unsold;
    std::optional<AccountId> winner;
    TokenAmount price;
    TokenAmount platform_fee;
    TokenAmount seller_proceeds;
};

enum class ItemKind { Canvas, Paint, Brush };
std::string_view item_kind_name(ItemKind k) noexcept;
ItemKind parse_item_kind(std::string_view name);

struct OrderLine {
    ItemKind kind = ItemKind::Canvas;
    int quantity = 0;
    friend bool operator==(const OrderLine&, const OrderLine&) = default;
};

enum class OrderState { Proposed, Accepted, Rejected, Fulfilled, Refunded };
std::string_view order_state_name(OrderState s) noexcept;

struct ShopOrder {
    OrderId id = 0;
    AccountId buyer;
    AccountId shop;
    AccountId escrow;
    std::vector<OrderLine> composition;
    TokenAmount amount;
    OrderState state = OrderState::Proposed;
    Tick deadline = 0;

    bool terminal() const {
        return state == OrderState::Rejected || state == OrderState::Fulfilled || state == OrderState::Refunded;
    }
    bool in_flight() const { return state == OrderState::Proposed || state == OrderState::Accepted; }
};

struct FulfillResult {
    ShopOrder order;
    std::vector<OrderLine> delivered;  // empty when the order was refunded
};

struct LoanRecord {
    AccountId investor;
    TokenAmount principal;
    TokenAmount repaid;

    TokenAmount outstanding() const { return principal - repaid; }
};

// Ownership registry, English auctions with escrowed bids, shop order escrow
// and the loan book, all executed against one ledger. Every operation is
// all-or-nothing: preconditions are checked before the first transfer.
class ContractEngine {
public:
    explicit ContractEngine(Ledger ledger, std::string_view platform_label = "auction-platform");

    Ledger& ledger() { return ledger_; }
    const Ledger& ledger() const { return ledger_; }
    const AccountId& platform() const { return platform_; }

    const OwnershipToken& mint_token(const AccountId& minter, const Sha256& artwork, Tick now);

    // Schedules a lot in the Created state; start_auction opens it.
    const AuctionLot& create_auction(TokenId token, const AccountId& seller, TokenAmount reserve,
                                     TokenAmount min_increment, Tick duration, Tick now,
                                     std::uint32_t platform_fee_bps = 250);
    const AuctionLot& start_auction(LotId lot, Tick now);
    const AuctionLot& cancel_auction(LotId lot, Tick now);
    const AuctionLot& open_auction(TokenId token, const AccountId& seller, TokenAmount reserve,
                                   TokenAmount min_increment, Tick duration, Tick now,
                                   std::uint32_t platform_fee_bps = 250);

    Bid place_bid(LotId lot, const AccountId& bidder, TokenAmount amount, Tick time);
    SettlementReport close_auction(LotId lot, Tick time);

    const ShopOrder& propose_order(const AccountId& buyer, const AccountId& shop, std::vector<OrderLine> composition,
                                   TokenAmount amount, Tick deadline, Tick now);
    const ShopOrder& shop_respond(OrderId order, bool accept, Tick now);
    FulfillResult fulfill_order(OrderId order, Tick now);
    // Past-deadline enforcement: Proposed becomes Rejected, Accepted is refunded.
    const ShopOrder& expire_order(OrderId order, Tick now);

    void record_loan(const AccountId& investor, TokenAmount principal);
    // Greedy repayment in registration order. `available` covers amounts and
    // the per-transfer network fee.
    std::vector<LedgerEvent> repay_loans(const AccountId& payer, TokenAmount available, Tick now);

    const OwnershipToken& token(TokenId id) const;
    const AuctionLot& lot(LotId id) const;
    const ShopOrder& order(OrderId id) const;
    const std::vector<OwnershipToken>& tokens() const { return tokens_; }
    const std::vector<AuctionLot>& lots() const { return lots_; }
    const std::vector<ShopOrder>& orders() const { return orders_; }
    const std::vector<LoanRecord>& loans() const { return loans_; }
    TokenAmount outstanding_loans() const;

    // Σ funds that non-terminal lots and accepted orders are holding.
    TokenAmount expected_escrow_total() const;
    TokenAmount actual_escrow_total() const;

private:
    AuctionLot& lot_mut(LotId id);
    ShopOrder& order_mut(OrderId id);
    OwnershipToken& token_mut(TokenId id);

    Ledger ledger_;
    AccountId platform_;
    std::vector<OwnershipToken> tokens_;
    std::map<Sha256, TokenId> by_artwork_;
    std::vector<AuctionLot> lots_;
    std::vector<ShopOrder> orders_;
    std::vector<LoanRecord> loans_;
};

}  // namespace easel
