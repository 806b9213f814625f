#pragma once

#include <stdexcept>
#include <string>

namespace gs {

enum class ErrorKind {
    GapClosing,
    BandEdge,
    OutOfBand,
    InvalidMapping,
    NotApplicable,
    RegimeViolation,
    IllConditioned,
    SolveFailure,
    SpecError,
    GridTooCoarse,
};

const char* to_string(ErrorKind kind);

// One exception type for the whole library; callers switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace gs
