#include "easel/amount.hpp"

#include <algorithm>

namespace easel {

std::string u128_to_string(u128 value) {
    if (value == 0) return "0";
    std::string out;
    while (value != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

TokenAmount TokenAmount::parse(std::string_view decimal) {
    if (decimal.empty()) throw Error(Errc::InvalidArgument, "empty amount");
    u128 value = 0;
    const u128 limit = ~static_cast<u128>(0);
    for (char c : decimal) {
        if (c < '0' || c > '9')
            throw Error(Errc::InvalidArgument, "amount must be a decimal integer: " + std::string(decimal));
        const auto digit = static_cast<u128>(c - '0');
        if (value > (limit - digit) / 10) throw Error(Errc::Overflow, "amount literal too large");
        value = value * 10 + digit;
    }
    return TokenAmount{value};
}

TokenAmount TokenAmount::parse_tokens(std::string_view text) {
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    std::string frac = dot == std::string_view::npos ? std::string{} : std::string(text.substr(dot + 1));
    if (frac.size() > 18) throw Error(Errc::InvalidArgument, "more than 18 fractional digits");
    frac.append(18 - frac.size(), '0');
    const TokenAmount w = whole.empty() ? TokenAmount{} : parse(whole) * kBaseUnitsPerToken;
    return w + parse(frac);
}

std::string TokenAmount::to_string() const { return u128_to_string(units_); }

std::string TokenAmount::to_token_string() const {
    std::string whole = u128_to_string(units_ / kBaseUnitsPerToken);
    std::string frac = u128_to_string(units_ % kBaseUnitsPerToken);
    frac.insert(0, 18 - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? whole : whole + "." + frac;
}

double TokenAmount::to_tokens_double() const {
    return static_cast<double>(units_ / kBaseUnitsPerToken) +
           static_cast<double>(units_ % kBaseUnitsPerToken) / 1e18;
}

}  // namespace easel
