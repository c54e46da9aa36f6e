#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compat {

enum class Errc {
    InvalidSpec,
    DuplicateConditioningSet,
    ContainmentViolation,
    EmptyLeftSide,
    SizeCapExceeded,
    ShapeMismatch,
    InvalidDistribution,
    ProbeCapExceeded,
    NotACycle,
    CircuitCapExceeded,
    OracleCapExceeded,
    NotAlternating,
    AmbiguousAction,
    IncompatibleInput,
    WeightCountMismatch,
    ParseError,
    Internal,
};

inline std::string_view errc_name(Errc code)
{
    switch (code) {
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::DuplicateConditioningSet: return "DuplicateConditioningSet";
    case Errc::ContainmentViolation: return "ContainmentViolation";
    case Errc::EmptyLeftSide: return "EmptyLeftSide";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::ProbeCapExceeded: return "ProbeCapExceeded";
    case Errc::NotACycle: return "NotACycle";
    case Errc::CircuitCapExceeded: return "CircuitCapExceeded";
    case Errc::OracleCapExceeded: return "OracleCapExceeded";
    case Errc::NotAlternating: return "NotAlternating";
    case Errc::AmbiguousAction: return "AmbiguousAction";
    case Errc::IncompatibleInput: return "IncompatibleInput";
    case Errc::WeightCountMismatch: return "WeightCountMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string & message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

    /// Resource caps, as opposed to malformed input.
    bool is_cap() const noexcept
    {
        return code_ == Errc::SizeCapExceeded || code_ == Errc::CircuitCapExceeded
            || code_ == Errc::OracleCapExceeded || code_ == Errc::ProbeCapExceeded;
    }

private:
    Errc code_;
};

} // namespace compat
