#pragma once

#include <stdexcept>
#include <string>

namespace cwork {

// Base for every library-specific failure. Callers that only care about
// "this operation could not produce a valid result" can catch this one.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------- states ---

// Requested truncation leaves tail mass >= 1e-12 outside the window.
struct TruncationTooSmall : Error {
    using Error::Error;
};

// Renyi order must be strictly positive.
struct InvalidRenyiOrder : Error {
    using Error::Error;
};

// --------------------------------------------------------- decomposition ---

// Distribution support exceeds the hard deconvolution cap.
struct SupportTooLarge : Error {
    using Error::Error;
};

// Poisson rate split parameters outside [0, lambda].
struct RateOutOfRange : Error {
    using Error::Error;
};

// State is not a shifted/phased coherent ladder state.
struct NotInC : Error {
    using Error::Error;
};

// ------------------------------------------------------------ cwp engine ---

// Claimed factor pair does not convolve to the input distribution.
struct ConvolutionMismatch : Error {
    using Error::Error;
};

// State support does not fit inside the requested index window.
struct WindowOverflow : Error {
    using Error::Error;
};

// Unitary output is not a product state on system x auxiliary.
struct NotAProcess : Error {
    using Error::Error;
};

// No nonnegative work distribution connects the two states.
struct NoValidProcess : Error {
    using Error::Error;
};

// ---------------------------------------------------------- potential ------

// Rescaling normalizer is not representable even after the energy shift.
struct Underflow : Error {
    using Error::Error;
};

// Dephased state has a zero weight inside its support window.
struct NotFullRank : Error {
    using Error::Error;
};

// No admissible mean-coherence root in [0, beta].
struct RootNotFound : Error {
    using Error::Error;
};

// ---------------------------------------------------------- fluctuation ----

// Trajectory constraint projector has vanishing thermal weight.
struct DegenerateConstraint : Error {
    using Error::Error;
};

// Reverse trajectory probability below the resolvable floor.
struct ReverseZero : Error {
    using Error::Error;
};

// Neither sign of the potential-difference identity holds on the grid.
struct NoMatch : Error {
    using Error::Error;
};

// Multipartite variance exceeds the producibility bound.
struct VarianceExceedsBound : Error {
    using Error::Error;
};

} // namespace cwork
