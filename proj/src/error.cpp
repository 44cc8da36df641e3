#include "error.hpp"

namespace ql {

const char* errc_name(Errc e) {
    switch (e) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
        case Errc::DegenerateForm: return "DegenerateForm";
        case Errc::NotPElementary: return "NotPElementary";
        case Errc::DependentRows: return "DependentRows";
        case Errc::NotInDual: return "NotInDual";
        case Errc::NonIntegralResult: return "NonIntegralResult";
        case Errc::NotDefinite: return "NotDefinite";
        case Errc::NotRank2: return "NotRank2";
        case Errc::NotOrderP: return "NotOrderP";
        case Errc::UnsupportedPrime: return "UnsupportedPrime";
        case Errc::MiddleBlocksPresent: return "MiddleBlocksPresent";
        case Errc::HypothesesNotMet: return "HypothesesNotMet";
        case Errc::TorsionPresent: return "TorsionPresent";
        case Errc::HypothesisFailed: return "HypothesisFailed";
        case Errc::NotOrder3: return "NotOrder3";
        case Errc::NotStable: return "NotStable";
        case Errc::WeightUnknown: return "WeightUnknown";
        case Errc::WeightTwoPresent: return "WeightTwoPresent";
        case Errc::Infeasible: return "Infeasible";
        case Errc::FixedCountMismatch: return "FixedCountMismatch";
        case Errc::DiscrMismatch: return "DiscrMismatch";
        case Errc::NoIntegralScale: return "NoIntegralScale";
        case Errc::GlueNotInDual: return "GlueNotInDual";
        case Errc::GlueNotOverlattice: return "GlueNotOverlattice";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::ClassificationFailure: return "ClassificationFailure";
        case Errc::NonIntegralExpansion: return "NonIntegralExpansion";
        case Errc::OutsideSupportedSpan: return "OutsideSupportedSpan";
        case Errc::SchemaError: return "SchemaError";
        case Errc::ConsistencyError: return "ConsistencyError";
        case Errc::MissingData: return "MissingData";
        case Errc::IoError: return "IoError";
        case Errc::NotFound: return "NotFound";
    }
    return "Unknown";
}

}  // namespace ql
