#include "easel/ledger.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace easel {
namespace {

constexpr std::string_view kOpenPrefix = "open:";
constexpr std::string_view kSealMemo = "seal-genesis";

std::string sanitize_memo(std::string_view memo) {
    std::string out(memo);
    std::replace_if(out.begin(), out.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    return out;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

template <typename Int>
Int parse_int(std::string_view text, const char* what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(Errc::CorruptLog, std::string("bad ") + what + ": '" + std::string(text) + "'");
    return value;
}

}  // namespace

AccountId AccountId::from_hex(std::string_view hex) {
    if (hex.size() != 40) throw Error(Errc::InvalidArgument, "account id must be 40 hex digits");
    AccountId id;
    for (std::size_t i = 0; i < 20; ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error(Errc::InvalidArgument, "account id must be hex");
        id.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return id;
}

bool AccountId::is_null() const {
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
}

std::string AccountId::hex() const { return to_hex(bytes); }

std::string_view category_name(EventCategory c) noexcept {
    switch (c) {
    case EventCategory::Funding: return "Funding";
    case EventCategory::Sale: return "Sale";
    case EventCategory::SupplyPurchase: return "SupplyPurchase";
    case EventCategory::NetworkFee: return "NetworkFee";
    case EventCategory::PlatformFee: return "PlatformFee";
    case EventCategory::LoanRepayment: return "LoanRepayment";
    case EventCategory::EscrowLock: return "EscrowLock";
    case EventCategory::EscrowRelease: return "EscrowRelease";
    case EventCategory::Internal: return "Internal";
    }
    return "Internal";
}

EventCategory parse_category(std::string_view name) {
    for (auto c : kAllCategories)
        if (category_name(c) == name) return c;
    throw Error(Errc::InvalidArgument, "unknown event category '" + std::string(name) + "'");
}

AccountId derive_account_id(std::string_view nonce, std::string_view label) {
    Sha256Builder h;
    h.update(nonce);
    const std::uint8_t separator = 0;
    h.update(std::span<const std::uint8_t>(&separator, 1));
    h.update(label);
    const Sha256 digest = h.finish();
    AccountId id;
    std::copy_n(digest.begin(), id.bytes.size(), id.bytes.begin());
    return id;
}

Ledger::Ledger(LedgerConfig config) : config_(std::move(config)) {
    fee_sink_ = open(config_.fee_sink_label);
}

AccountId Ledger::open(std::string_view label) {
    if (label.empty()) throw Error(Errc::InvalidArgument, "empty account label");
    if (by_label_.contains(std::string(label))) throw Error(Errc::DuplicateAccount, std::string(label));
    const AccountId id = derive_account_id(config_.genesis_nonce, label);
    if (balances_.contains(id)) throw Error(Errc::DuplicateAccount, "id collision for " + std::string(label));
    balances_.emplace(id, TokenAmount{});
    labels_.emplace(id, std::string(label));
    by_label_.emplace(std::string(label), id);
    return id;
}

AccountId Ledger::create_account(std::string_view label, Tick time) {
    if (label.find_first_of("\t\n\r") != std::string_view::npos)
        throw Error(Errc::InvalidArgument, "account label contains control characters");
    const AccountId id = open(label);
    LedgerEvent ev;
    ev.time = time;
    ev.to = id;
    ev.memo = std::string(kOpenPrefix) + std::string(label);
    append(std::move(ev));
    return id;
}

void Ledger::require(const AccountId& account) const {
    if (!balances_.contains(account)) throw Error(Errc::UnknownAccount, account.hex());
}

const LedgerEvent& Ledger::append(LedgerEvent event) {
    event.seq = log_.size();
    event.memo = sanitize_memo(event.memo);
    log_.push_back(std::move(event));
    return log_.back();
}

const LedgerEvent& Ledger::mint(const AccountId& to, TokenAmount amount, EventCategory category, Tick time,
                                std::string_view memo) {
    if (sealed_) throw Error(Errc::GenesisSealed);
    require(to);
    if (amount.is_zero()) throw Error(Errc::ZeroAmount);
    balances_[to] = balances_[to] + amount;
    LedgerEvent ev;
    ev.time = time;
    ev.to = to;
    ev.amount = amount;
    ev.category = category;
    ev.memo = std::string(memo);
    return append(std::move(ev));
}

void Ledger::seal_genesis(Tick time) {
    if (sealed_) return;
    sealed_ = true;
    LedgerEvent ev;
    ev.time = time;
    ev.memo = std::string(kSealMemo);
    append(std::move(ev));
}

TokenAmount Ledger::fee_for(EventCategory category) const {
    auto it = config_.fee_schedule.find(category);
    return it == config_.fee_schedule.end() ? TokenAmount{} : it->second;
}

const LedgerEvent& Ledger::transfer(const AccountId& from, const AccountId& to, TokenAmount amount,
                                    EventCategory category, Tick time, std::string_view memo,
                                    std::optional<TokenAmount> fee_override) {
    if (amount.is_zero()) throw Error(Errc::ZeroAmount);
    require(from);
    require(to);
    const TokenAmount fee = fee_override.value_or(fee_for(category));
    const TokenAmount debit = amount + fee;
    const TokenAmount available = balances_.at(from);
    if (available < debit)
        throw Error(Errc::InsufficientFunds,
                    label_of(from) + " has " + available.to_string() + ", needs " + debit.to_string());
    // Compute every new balance before touching state so overflow cannot leave
    // a half-applied transfer behind.
    std::map<AccountId, TokenAmount> next;
    next[from] = available - debit;
    next[to] = (next.contains(to) ? next[to] : balances_.at(to)) + amount;
    if (!fee.is_zero()) next[fee_sink_] = (next.contains(fee_sink_) ? next[fee_sink_] : balances_.at(fee_sink_)) + fee;
    for (auto& [id, value] : next) balances_[id] = value;

    LedgerEvent ev;
    ev.time = time;
    ev.from = from;
    ev.to = to;
    ev.amount = amount;
    ev.fee = fee;
    ev.category = category;
    ev.memo = std::string(memo);
    return append(std::move(ev));
}

const LedgerEvent& Ledger::note(const AccountId& account, Tick time, std::string_view memo) {
    require(account);
    LedgerEvent ev;
    ev.time = time;
    ev.from = account;
    ev.to = account;
    ev.memo = std::string(memo);
    return append(std::move(ev));
}

TokenAmount Ledger::balance(const AccountId& account) const {
    auto it = balances_.find(account);
    if (it == balances_.end()) throw Error(Errc::UnknownAccount, account.hex());
    return it->second;
}

std::optional<AccountId> Ledger::find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::string Ledger::label_of(const AccountId& account) const {
    auto it = labels_.find(account);
    return it == labels_.end() ? account.hex() : it->second;
}

std::vector<TimelineEntry> Ledger::balance_timeline(const AccountId& account) const {
    require(account);
    std::vector<TimelineEntry> out;
    TokenAmount running;
    for (const auto& ev : log_) {
        if (ev.is_annotation()) continue;
        bool touched = false;
        if (ev.from == account && !ev.from.is_null()) {
            running -= ev.amount + ev.fee;
            touched = true;
        }
        if (ev.to == account) {
            running += ev.amount;
            touched = true;
        }
        if (account == fee_sink_ && !ev.fee.is_zero()) {
            running += ev.fee;
            touched = true;
        }
        if (touched) out.push_back({ev.seq, ev.time, running, ev.category});
    }
    return out;
}

TokenAmount Ledger::total_supply() const {
    TokenAmount sum;
    for (const auto& [id, value] : balances_) sum += value;
    return sum;
}

Sha256 Ledger::state_hash() const {
    Sha256Builder h;
    for (const auto& [id, value] : balances_) {
        h.update(id.bytes);
        std::array<std::uint8_t, 16> be{};
        u128 v = value.base_units();
        for (int i = 15; i >= 0; --i) {
            be[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xFF);
            v >>= 8;
        }
        h.update(be);
    }
    const std::uint64_t last = log_.empty() ? ~std::uint64_t{0} : log_.back().seq;
    std::array<std::uint8_t, 8> seq_be{};
    for (int i = 0; i < 8; ++i) seq_be[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(last >> (56 - 8 * i));
    h.update(seq_be);
    return h.finish();
}

Ledger Ledger::replay(std::span<const LedgerEvent> log, LedgerConfig config) {
    Ledger out(std::move(config));
    auto corrupt = [](const LedgerEvent& ev, const std::string& why) {
        return Error(Errc::CorruptLog, "seq " + std::to_string(ev.seq) + ": " + why);
    };
    for (std::size_t i = 0; i < log.size(); ++i) {
        const LedgerEvent& ev = log[i];
        if (ev.seq != i) throw corrupt(ev, "expected seq " + std::to_string(i));
        if (ev.is_annotation()) {
            if (ev.category != EventCategory::Internal) throw corrupt(ev, "zero-amount event must be Internal");
            if (ev.memo.starts_with(kOpenPrefix)) {
                const std::string label = ev.memo.substr(kOpenPrefix.size());
                try {
                    if (out.open(label) != ev.to) throw corrupt(ev, "account id does not match label " + label);
                } catch (const Error& e) {
                    if (e.code() == Errc::CorruptLog) throw;
                    throw corrupt(ev, e.what());
                }
            } else if (ev.memo == kSealMemo) {
                out.sealed_ = true;
            } else if (!out.has_account(ev.to)) {
                throw corrupt(ev, "note on unknown account");
            }
        } else if (ev.from.is_null()) {
            if (out.sealed_) throw corrupt(ev, "mint after genesis seal");
            if (!out.has_account(ev.to)) throw corrupt(ev, "mint to unknown account");
            out.balances_[ev.to] += ev.amount;
        } else {
            if (!out.has_account(ev.from) || !out.has_account(ev.to)) throw corrupt(ev, "unknown account");
            if (out.balances_[ev.from] < ev.amount + ev.fee) throw corrupt(ev, "negative balance");
            out.balances_[ev.from] -= ev.amount + ev.fee;
            out.balances_[ev.to] += ev.amount;
            out.balances_[out.fee_sink_] += ev.fee;
        }
        out.log_.push_back(ev);
    }
    return out;
}

std::string format_event(const LedgerEvent& ev) {
    std::ostringstream os;
    os << ev.seq << '\t' << ev.time << '\t' << ev.from.hex() << '\t' << ev.to.hex() << '\t' << ev.amount.to_string()
       << '\t' << ev.fee.to_string() << '\t' << category_name(ev.category) << '\t' << ev.memo;
    return os.str();
}

LedgerEvent parse_event(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (fields.size() < 7) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) throw Error(Errc::CorruptLog, "expected 8 tab-separated fields");
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    fields.push_back(line.substr(start));
    LedgerEvent ev;
    ev.seq = parse_int<std::uint64_t>(fields[0], "seq");
    ev.time = parse_int<Tick>(fields[1], "time");
    try {
        ev.from = AccountId::from_hex(fields[2]);
        ev.to = AccountId::from_hex(fields[3]);
        ev.amount = TokenAmount::parse(fields[4]);
        ev.fee = TokenAmount::parse(fields[5]);
        ev.category = parse_category(fields[6]);
    } catch (const Error& e) {
        throw Error(Errc::CorruptLog, e.what());
    }
    ev.memo = std::string(fields[7]);
    return ev;
}

void write_log(std::ostream& out, std::span<const LedgerEvent> log) {
    for (const auto& ev : log) out << format_event(ev) << '\n';
}

std::vector<LedgerEvent> read_log(std::istream& in) {
    std::vector<LedgerEvent> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(parse_event(line));
    }
    return out;
}

Sha256 log_hash(std::span<const LedgerEvent> log) {
    Sha256Builder h;
    for (const auto& ev : log) {
        h.update(format_event(ev));
        h.update("\n");
    }
    return h.finish();
}

}  // namespace easel
