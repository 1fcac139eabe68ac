#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairwave {

enum class Errc {
    OutOfValidityWindow,
    ModeCutoff,
    NoPhaseMatch,
    DegenerateExpansion,
    PhaseMatchViolated,
    NonNormalizable,
    ExponentOverflow,
    TotalInternalReflection,
    SingularTransform,
    NoRootInInterval,
    OutOfRange,
    NoPhysicalRoot,
    NegativeDiscriminant,
    FitDiverged,
    InsufficientSamples,
    QuadratureNotConverged,
    GridTooCoarse,
    ConfigInvalid,
    InvalidArgument,
};

std::string_view errc_name(Errc c);

// every failure in the library surfaces as this type; code() is what tests dispatch on
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace pairwave
