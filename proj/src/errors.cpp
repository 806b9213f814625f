#include "giantscatter/errors.hpp"

namespace gs {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::GapClosing: return "GapClosing";
        case ErrorKind::BandEdge: return "BandEdge";
        case ErrorKind::OutOfBand: return "OutOfBand";
        case ErrorKind::InvalidMapping: return "InvalidMapping";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::RegimeViolation: return "RegimeViolation";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::SolveFailure: return "SolveFailure";
        case ErrorKind::SpecError: return "SpecError";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gs
