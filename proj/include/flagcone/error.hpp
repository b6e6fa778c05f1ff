#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flagcone {

/// Failure categories reported by every flagcone operation.
enum class ErrorKind {
    // poset validation
    NoUniqueBottom,
    NoUniqueTop,
    BadCoverRank,
    DanglingElement,
    CyclicCovers,
    UnknownElement,
    DuplicateElement,
    // arguments out of range
    RankSetOutOfRange,
    IntervalOutOfRange,
    NotComparable,
    AmbientTooLarge,
    AmbientMismatch,
    BadShiftIndex,
    DegreeMismatch,
    DegreeTooLarge,
    PosetTooLarge,
    // algebra / geometry
    ZeroForm,
    ZeroVector,
    NotPointed,
    DimensionOverflow,
    EmptyInput,
    NotInCone,
    // text formats
    ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NoUniqueBottom: return "NoUniqueBottom";
    case ErrorKind::NoUniqueTop: return "NoUniqueTop";
    case ErrorKind::BadCoverRank: return "BadCoverRank";
    case ErrorKind::DanglingElement: return "DanglingElement";
    case ErrorKind::CyclicCovers: return "CyclicCovers";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::RankSetOutOfRange: return "RankSetOutOfRange";
    case ErrorKind::IntervalOutOfRange: return "IntervalOutOfRange";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::AmbientTooLarge: return "AmbientTooLarge";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::BadShiftIndex: return "BadShiftIndex";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::PosetTooLarge: return "PosetTooLarge";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotInCone: return "NotInCone";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace flagcone
