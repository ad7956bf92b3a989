#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "easel/amount.hpp"
#include "easel/digest.hpp"

namespace easel {

// Simulation time in integer ticks (one tick is one simulated minute in scenarios).
using Tick = std::int64_t;

struct AccountId {
    std::array<std::uint8_t, 20> bytes{};

    static AccountId null() { return {}; }
    static AccountId from_hex(std::string_view hex);
    bool is_null() const;
    std::string hex() const;

    friend auto operator<=>(const AccountId&, const AccountId&) = default;
};

enum class EventCategory {
    Funding,
    Sale,
    SupplyPurchase,
    NetworkFee,
    PlatformFee,
    LoanRepayment,
    EscrowLock,
    EscrowRelease,
    Internal,
};

inline constexpr std::array kAllCategories = {
    EventCategory::Funding,     EventCategory::Sale,          EventCategory::SupplyPurchase,
    EventCategory::NetworkFee,  EventCategory::PlatformFee,   EventCategory::LoanRepayment,
    EventCategory::EscrowLock,  EventCategory::EscrowRelease, EventCategory::Internal,
};

std::string_view category_name(EventCategory c) noexcept;
EventCategory parse_category(std::string_view name);

// Immutable once appended. Zero-amount Internal records are annotations
// (account opens, genesis seal, contract notes) and move no funds.
struct LedgerEvent {
    std::uint64_t seq = 0;
    Tick time = 0;
    AccountId from;
    AccountId to;
    TokenAmount amount;
    TokenAmount fee;
    EventCategory category = EventCategory::Internal;
    std::string memo;

    bool is_annotation() const { return amount.is_zero() && fee.is_zero(); }
    friend bool operator==(const LedgerEvent&, const LedgerEvent&) = default;
};

struct TimelineEntry {
    std::uint64_t seq = 0;
    Tick time = 0;
    TokenAmount balance_after;
    EventCategory category = EventCategory::Internal;
};

struct LedgerConfig {
    std::string genesis_nonce = "easel-genesis-v1";
    std::string fee_sink_label = "network-fee-sink";
    std::map<EventCategory, TokenAmount> fee_schedule;
};

AccountId derive_account_id(std::string_view nonce, std::string_view label);

// Token accounting with an append-only event log. Single writer; no internal
// locking. Every failed operation leaves the ledger untouched.
class Ledger {
public:
    explicit Ledger(LedgerConfig config = {});

    AccountId create_account(std::string_view label, Tick time = 0);

    const LedgerEvent& mint(const AccountId& to, TokenAmount amount, EventCategory category, Tick time,
                            std::string_view memo = {});
    void seal_genesis(Tick time);
    bool genesis_sealed() const { return sealed_; }

    // Debits from amount + fee, credits to amount and the fee sink fee. The fee
    // defaults to the schedule entry for the category.
    const LedgerEvent& transfer(const AccountId& from, const AccountId& to, TokenAmount amount,
                                EventCategory category, Tick time, std::string_view memo = {},
                                std::optional<TokenAmount> fee_override = std::nullopt);

    // Zero-amount Internal record attached to an account.
    const LedgerEvent& note(const AccountId& account, Tick time, std::string_view memo);

    TokenAmount balance(const AccountId& account) const;
    bool has_account(const AccountId& account) const { return balances_.contains(account); }
    std::optional<AccountId> find(std::string_view label) const;
    std::string label_of(const AccountId& account) const;
    TokenAmount fee_for(EventCategory category) const;

    std::vector<TimelineEntry> balance_timeline(const AccountId& account) const;

    TokenAmount total_supply() const;
    const std::map<AccountId, TokenAmount>& balances() const { return balances_; }
    std::span<const LedgerEvent> log() const { return log_; }
    const AccountId& fee_sink() const { return fee_sink_; }
    const LedgerConfig& config() const { return config_; }

    // SHA-256 over sorted (account, balance) pairs plus the last seq.
    Sha256 state_hash() const;

    static Ledger replay(std::span<const LedgerEvent> log, LedgerConfig config = {});

private:
    const LedgerEvent& append(LedgerEvent event);
    AccountId open(std::string_view label);
    void require(const AccountId& account) const;

    LedgerConfig config_;
    AccountId fee_sink_;
    bool sealed_ = false;
    std::map<AccountId, TokenAmount> balances_;
    std::map<AccountId, std::string> labels_;
    std::unordered_map<std::string, AccountId> by_label_;
    std::vector<LedgerEvent> log_;
};

// Newline-delimited log: seq, time, from, to, amount, fee, category, memo
// separated by tabs; amounts as decimal base units.
std::string format_event(const LedgerEvent& event);
LedgerEvent parse_event(std::string_view line);
void write_log(std::ostream& out, std::span<const LedgerEvent> log);
std::vector<LedgerEvent> read_log(std::istream& in);
Sha256 log_hash(std::span<const LedgerEvent> log);

}  // namespace easel
