#include "pairwave/errors.hpp"

namespace pairwave {

std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::OutOfValidityWindow: return "OutOfValidityWindow";
        case Errc::ModeCutoff: return "ModeCutoff";
        case Errc::NoPhaseMatch: return "NoPhaseMatch";
        case Errc::DegenerateExpansion: return "DegenerateExpansion";
        case Errc::PhaseMatchViolated: return "PhaseMatchViolated";
        case Errc::NonNormalizable: return "NonNormalizable";
        case Errc::ExponentOverflow: return "ExponentOverflow";
        case Errc::TotalInternalReflection: return "TotalInternalReflection";
        case Errc::SingularTransform: return "SingularTransform";
        case Errc::NoRootInInterval: return "NoRootInInterval";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NoPhysicalRoot: return "NoPhysicalRoot";
        case Errc::NegativeDiscriminant: return "NegativeDiscriminant";
        case Errc::FitDiverged: return "FitDiverged";
        case Errc::InsufficientSamples: return "InsufficientSamples";
        case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
        case Errc::GridTooCoarse: return "GridTooCoarse";
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace pairwave
