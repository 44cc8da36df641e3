#pragma once

#include <stdexcept>
#include <string>

namespace ql {

enum class Errc {
    InvalidArgument,
    ParseError,
    DegenerateForm,
    NotPElementary,
    DependentRows,
    NotInDual,
    NonIntegralResult,
    NotDefinite,
    NotRank2,
    NotOrderP,
    UnsupportedPrime,
    MiddleBlocksPresent,
    HypothesesNotMet,
    TorsionPresent,
    HypothesisFailed,
    NotOrder3,
    NotStable,
    WeightUnknown,
    WeightTwoPresent,
    Infeasible,
    FixedCountMismatch,
    DiscrMismatch,
    NoIntegralScale,
    GlueNotInDual,
    GlueNotOverlattice,
    NotCoprime,
    ClassificationFailure,
    NonIntegralExpansion,
    OutsideSupportedSpan,
    SchemaError,
    ConsistencyError,
    MissingData,
    IoError,
    NotFound,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Parse errors remember the byte offset into the source text.
class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& msg)
        : Error(Errc::ParseError, msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace ql
