#include "easel/error.hpp"

namespace easel {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::DuplicateAccount: return "DuplicateAccount";
    case Errc::UnknownAccount: return "UnknownAccount";
    case Errc::GenesisSealed: return "GenesisSealed";
    case Errc::InsufficientFunds: return "InsufficientFunds";
    case Errc::ZeroAmount: return "ZeroAmount";
    case Errc::Overflow: return "Overflow";
    case Errc::CorruptLog: return "CorruptLog";
    case Errc::DuplicateArtwork: return "DuplicateArtwork";
    case Errc::UnknownToken: return "UnknownToken";
    case Errc::NotOwner: return "NotOwner";
    case Errc::TokenLocked: return "TokenLocked";
    case Errc::UnknownLot: return "UnknownLot";
    case Errc::AuctionClosed: return "AuctionClosed";
    case Errc::BidTooLow: return "BidTooLow";
    case Errc::SelfBid: return "SelfBid";
    case Errc::NotOpen: return "NotOpen";
    case Errc::TooEarly: return "TooEarly";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::UnknownOrder: return "UnknownOrder";
    case Errc::EmptyOrder: return "EmptyOrder";
    case Errc::NotProposed: return "NotProposed";
    case Errc::NotAccepted: return "NotAccepted";
    case Errc::NoTrendData: return "NoTrendData";
    case Errc::TranslationUnavailable: return "TranslationUnavailable";
    case Errc::UnrenderableGlyph: return "UnrenderableGlyph";
    case Errc::CanvasTooSmall: return "CanvasTooSmall";
    case Errc::FontError: return "FontError";
    case Errc::NotThin: return "NotThin";
    case Errc::OutOfWorkspace: return "OutOfWorkspace";
    case Errc::DegenerateCanvas: return "DegenerateCanvas";
    case Errc::OutOfSupplies: return "OutOfSupplies";
    case Errc::Deadlock: return "Deadlock";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace easel
