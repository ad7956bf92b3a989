#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace easel {

// Every failure surfaced by the library carries one of these codes. The
// gateway maps them onto HTTP statuses and echoes the name verbatim.
enum class Errc {
    DuplicateAccount,
    UnknownAccount,
    GenesisSealed,
    InsufficientFunds,
    ZeroAmount,
    Overflow,
    CorruptLog,
    DuplicateArtwork,
    UnknownToken,
    NotOwner,
    TokenLocked,
    UnknownLot,
    AuctionClosed,
    BidTooLow,
    SelfBid,
    NotOpen,
    TooEarly,
    InvalidArgument,
    UnknownOrder,
    EmptyOrder,
    NotProposed,
    NotAccepted,
    NoTrendData,
    TranslationUnavailable,
    UnrenderableGlyph,
    CanvasTooSmall,
    FontError,
    NotThin,
    OutOfWorkspace,
    DegenerateCanvas,
    OutOfSupplies,
    Deadlock,
    ConfigError,
    IoError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}
    explicit Error(Errc code) : Error(code, "") {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace easel
