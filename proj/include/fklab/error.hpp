#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fklab {

enum class ErrorCode {
    DivisionByZero,
    DescriptorMismatch,
    CapExceeded,
    NotAPthPower,
    DepthInsufficient,
    ZeroArgument,
    OrderOverflow,
    ZeroInSupport,
    EmptyAfterDrop,
    TooShort,
    CharDividesN,
    BadA,
    BadS,
    ZeroU,
    BadWeight,
    TooSmall,
    NotInverseClosed,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures surface as this exception; `code()` identifies the contract violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fklab
