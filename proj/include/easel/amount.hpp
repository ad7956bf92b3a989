#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "easel/error.hpp"

namespace easel {

using u128 = unsigned __int128;

// Non-negative token quantity in base units (10^18 base units per token).
// Arithmetic is checked: overflow and underflow throw instead of wrapping.
class TokenAmount {
public:
    static constexpr u128 kBaseUnitsPerToken = static_cast<u128>(1'000'000'000'000'000'000ULL);

    constexpr TokenAmount() = default;
    constexpr explicit TokenAmount(u128 base_units) : units_(base_units) {}

    static constexpr TokenAmount zero() { return TokenAmount{}; }
    static TokenAmount tokens(std::uint64_t whole) { return TokenAmount{whole} * kBaseUnitsPerToken; }

    // Decimal base-unit integer, e.g. "1500000000000000000".
    static TokenAmount parse(std::string_view decimal);
    // Token quantity with up to 18 fractional digits, e.g. "1.5".
    static TokenAmount parse_tokens(std::string_view text);

    constexpr u128 base_units() const { return units_; }
    constexpr bool is_zero() const { return units_ == 0; }

    std::string to_string() const;
    std::string to_token_string() const;
    // Lossy; for display and charts only.
    double to_tokens_double() const;

    friend constexpr auto operator<=>(const TokenAmount&, const TokenAmount&) = default;

    TokenAmount operator+(TokenAmount other) const {
        u128 out = units_ + other.units_;
        if (out < units_) throw Error(Errc::Overflow, "token addition");
        return TokenAmount{out};
    }
    TokenAmount operator-(TokenAmount other) const {
        if (other.units_ > units_) throw Error(Errc::Overflow, "token subtraction below zero");
        return TokenAmount{units_ - other.units_};
    }
    TokenAmount operator*(u128 factor) const {
        if (factor != 0 && units_ > ~static_cast<u128>(0) / factor)
            throw Error(Errc::Overflow, "token multiplication");
        return TokenAmount{units_ * factor};
    }
    TokenAmount operator/(u128 divisor) const {
        if (divisor == 0) throw Error(Errc::InvalidArgument, "division by zero");
        return TokenAmount{units_ / divisor};
    }
    TokenAmount& operator+=(TokenAmount other) { return *this = *this + other; }
    TokenAmount& operator-=(TokenAmount other) { return *this = *this - other; }

private:
    u128 units_ = 0;
};

std::string u128_to_string(u128 value);

}  // namespace easel
