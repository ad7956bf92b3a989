#include "support.hpp"

#include <random>
#include <sstream>

#include "easel/error.hpp"
#include "easel/ledger.hpp"

using namespace easel;
using easel::test::code_of;

namespace {

TokenAmount units(std::uint64_t n) { return TokenAmount{n}; }

}  // namespace

TEST_CASE("token amounts are exact and refuse to overflow") {
    CHECK(TokenAmount::tokens(1).to_string() == "1000000000000000000");
    CHECK(TokenAmount::parse_tokens("1.5") == TokenAmount::parse("1500000000000000000"));
    CHECK(TokenAmount::parse_tokens("0.000000000000000001") == units(1));
    CHECK(TokenAmount::parse("340282366920938463463374607431768211455").to_string() ==
          "340282366920938463463374607431768211455");
    CHECK(code_of([] { TokenAmount::parse("340282366920938463463374607431768211456"); }) == Errc::Overflow);
    CHECK(code_of([] { (void)(TokenAmount::parse("340282366920938463463374607431768211455") + units(1)); }) ==
          Errc::Overflow);
    CHECK(code_of([] { (void)(units(3) - units(4)); }) == Errc::Overflow);
    CHECK(TokenAmount::parse_tokens("2.25").to_token_string() == "2.25");
    CHECK(code_of([] { TokenAmount::parse("12a"); }) == Errc::InvalidArgument);
}

TEST_CASE("accounts are unique and derived deterministically from their label") {
    Ledger a;
    const AccountId i1 = a.create_account("investor-1");
    CHECK(a.balance(i1).is_zero());
    a.create_account("gakachu");
    CHECK(code_of([&] { a.create_account("gakachu"); }) == Errc::DuplicateAccount);

    Ledger b;
    CHECK(b.create_account("investor-1") == i1);
    CHECK(i1 == derive_account_id(LedgerConfig{}.genesis_nonce, "investor-1"));
    CHECK(AccountId::from_hex(i1.hex()) == i1);
    CHECK(i1.hex().size() == 40);

    LedgerConfig other;
    other.genesis_nonce = "another-run";
    CHECK(Ledger(other).create_account("investor-1") != i1);
}

TEST_CASE("mint only during genesis") {
    Ledger l;
    const AccountId a = l.create_account("a");
    l.mint(a, units(3), EventCategory::Funding, 0);
    l.mint(a, units(4), EventCategory::Internal, 0);
    CHECK(l.balance(a) == units(7));
    l.seal_genesis(0);
    CHECK(code_of([&] { l.mint(a, units(1), EventCategory::Funding, 1); }) == Errc::GenesisSealed);
    CHECK(l.balance(a) == units(7));
}

TEST_CASE("transfer debits amount plus fee and credits the fee sink") {
    LedgerConfig cfg;
    cfg.fee_schedule[EventCategory::Sale] = units(1);
    Ledger l(cfg);
    const AccountId a = l.create_account("a");
    const AccountId b = l.create_account("b");
    l.mint(a, units(10), EventCategory::Funding, 0);
    l.seal_genesis(0);

    l.transfer(a, b, units(5), EventCategory::Internal, 1);
    CHECK(l.balance(a) == units(5));
    CHECK(l.balance(b) == units(5));

    l.transfer(a, b, units(2), EventCategory::Sale, 2);
    CHECK(l.balance(a) == units(2));
    CHECK(l.balance(b) == units(7));
    CHECK(l.balance(l.fee_sink()) == units(1));

    const auto before = l.log().size();
    CHECK(code_of([&] { l.transfer(a, b, units(5), EventCategory::Internal, 3); }) == Errc::InsufficientFunds);
    CHECK(code_of([&] { l.transfer(a, b, units(2), EventCategory::Sale, 3); }) == Errc::InsufficientFunds);
    CHECK(code_of([&] { l.transfer(a, b, TokenAmount{}, EventCategory::Internal, 3); }) == Errc::ZeroAmount);
    CHECK(code_of([&] { l.transfer(a, AccountId::from_hex(std::string(40, 'f')), units(1), EventCategory::Internal, 3); }) ==
          Errc::UnknownAccount);
    CHECK(l.log().size() == before);
    CHECK(l.balance(a) == units(2));
}

TEST_CASE("balance timeline lists every touching event with the running balance") {
    LedgerConfig cfg;
    cfg.fee_schedule[EventCategory::Sale] = units(1);
    Ledger l(cfg);
    const AccountId a = l.create_account("a");
    const AccountId b = l.create_account("b");
    CHECK(l.balance_timeline(a).empty());
    l.mint(a, units(5), EventCategory::Funding, 0);
    l.seal_genesis(0);
    l.transfer(a, b, units(2), EventCategory::Sale, 7);

    const auto t = l.balance_timeline(a);
    REQUIRE(t.size() == 2);
    CHECK(t[0].time == 0);
    CHECK(t[0].balance_after == units(5));
    CHECK(t[0].category == EventCategory::Funding);
    CHECK(t[1].time == 7);
    CHECK(t[1].balance_after == units(2));
    CHECK(t[1].category == EventCategory::Sale);
    CHECK(t.back().balance_after == l.balance(a));
    CHECK(code_of([&] { l.balance_timeline(AccountId::from_hex(std::string(40, '0'))); }) == Errc::UnknownAccount);
}

TEST_CASE("log text round trip and replay reproduce the state hash") {
    LedgerConfig cfg;
    cfg.fee_schedule[EventCategory::EscrowLock] = units(3);
    Ledger l(cfg);
    const AccountId a = l.create_account("alice", 0);
    const AccountId b = l.create_account("bob", 0);
    l.mint(a, units(1000), EventCategory::Funding, 0, "seed money");
    l.seal_genesis(0);
    l.transfer(a, b, units(100), EventCategory::EscrowLock, 4, "bid lot=1");
    l.note(b, 5, "hello\tworld");

    std::stringstream ss;
    write_log(ss, l.log());
    const auto parsed = read_log(ss);
    REQUIRE(parsed.size() == l.log().size());
    for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == l.log()[i]);

    const Ledger r = Ledger::replay(parsed, cfg);
    CHECK(r.state_hash() == l.state_hash());
    CHECK(r.balance(a) == l.balance(a));
    CHECK(log_hash(parsed) == log_hash(l.log()));

    const Ledger empty = Ledger::replay({}, cfg);
    for (const auto& [id, bal] : empty.balances()) CHECK(bal.is_zero());
}

TEST_CASE("replay rejects corrupt logs") {
    Ledger l;
    const AccountId a = l.create_account("a");
    const AccountId b = l.create_account("b");
    l.mint(a, units(10), EventCategory::Funding, 0);
    l.seal_genesis(0);
    l.transfer(a, b, units(4), EventCategory::Internal, 1);
    std::vector<LedgerEvent> log(l.log().begin(), l.log().end());

    SUBCASE("seq gap") {
        log.erase(log.begin() + 1);
        CHECK(code_of([&] { Ledger::replay(log); }) == Errc::CorruptLog);
    }
    SUBCASE("overdraft") {
        log.back().amount = units(11);
        CHECK(code_of([&] { Ledger::replay(log); }) == Errc::CorruptLog);
    }
    SUBCASE("garbled line") {
        std::stringstream ss("0\t0\tnot-an-id\n");
        CHECK(code_of([&] { read_log(ss); }) == Errc::CorruptLog);
    }
}

TEST_CASE("random operation sequences conserve supply and never go negative") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 20; ++round) {
        LedgerConfig cfg;
        cfg.fee_schedule[EventCategory::Sale] = units(rng() % 5);
        cfg.fee_schedule[EventCategory::EscrowLock] = units(rng() % 3);
        Ledger l(cfg);
        std::vector<AccountId> ids;
        for (int i = 0; i < 8; ++i) ids.push_back(l.create_account("acct-" + std::to_string(i)));
        TokenAmount supply;
        for (const auto& id : ids) {
            const TokenAmount m = units(rng() % 200);
            if (!m.is_zero()) l.mint(id, m, EventCategory::Funding, 0);
            supply += m;
        }
        l.seal_genesis(0);
        for (int op = 0; op < 300; ++op) {
            const AccountId& from = ids[rng() % ids.size()];
            const AccountId& to = ids[rng() % ids.size()];
            const TokenAmount amt = units(rng() % 60);
            const EventCategory cat = kAllCategories[rng() % kAllCategories.size()];
            const Sha256 before = l.state_hash();
            const auto log_size = l.log().size();
            try {
                l.transfer(from, to, amt, cat, op + 1);
            } catch (const Error&) {
                CHECK(l.state_hash() == before);
                CHECK(l.log().size() == log_size);
            }
            CHECK(l.total_supply() == supply);
        }
        CHECK(Ledger::replay(l.log(), cfg).state_hash() == l.state_hash());
    }
}
