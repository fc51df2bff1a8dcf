#pragma once

#include <stdexcept>
#include <string>

namespace eulerscope {

enum class ErrorKind {
    DomainMismatch,
    UnsupportedKind,
    InvalidInterval,
    InvalidTriplet,
    GraphFailure,
    Coverage,
    UnsupportedGrid,
    NonPeriodicSample,
    UnimplementedOrder,
    Inconsistency,
    Context,
    Conditioning,
    InadmissibleField,
    DivergenceFailure,
    Parameter,
    EmptySeries,
    DegenerateDirection,
    Config,
    CorruptInput,
    Io,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-checkable kind next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace eulerscope
