#pragma once

#include <optional>
#include <vector>

#include "cwork/ladder.hpp"

namespace cwork {

// A weight is a point mass when it exceeds this.
inline constexpr double kTrivialFactor = 1.0 - 1e-9;

// ------------------------------------------------------------ deconvolve ---

struct DeconvolveOptions {
    double tol = 1e-8;            // sup-norm residual acceptance
    int exhaustive_cap = 16;      // support size up to which the verdict is exhaustive
    int hard_cap = 64;            // SupportTooLarge above this
    int restarts = 20;            // ANLS restarts per support split
    double converge_tol = 1e-12;  // ANLS residual-change stop
    std::uint64_t seed = 0x5eedULL;
};

struct FactorPair {
    EnergyDistribution first;  // anchored at index 0
    EnergyDistribution second; // anchored at the input's minimum index
    double residual = 0.0;     // sup-norm of first * second - p
};

struct DeconvolveResult {
    std::vector<FactorPair> factors; // sorted by (first support size, residual)
    bool exhaustive = false;
    bool decomposable = false;       // at least one non-trivial pair found
};

// Finds non-trivial factor pairs q, r with q * r = p within options.tol
// (sup norm), enumerating every admissible support split and running
// alternating nonnegative least squares with seeded restarts on each.
// Translation freedom is fixed by anchoring factors as documented on
// FactorPair. Throws SupportTooLarge when the support window exceeds
// options.hard_cap.
DeconvolveResult deconvolve(const EnergyDistribution& p, const DeconvolveOptions& options = {});

// True iff deconvolve finds at least one non-trivial pair.
bool is_decomposable(const EnergyDistribution& p, const DeconvolveOptions& options = {});

// ---------------------------------------------------------- Poisson split --

struct RaikovSplit {
    double mu = 0.0;
    double nu = 0.0;
    int shift1 = 0;
    int shift2 = 0;
    bool trivial = false;       // one rate is (numerically) zero
    double roundtrip_tv = 0.0;  // TV distance of the recombined distribution
};

// Splits a Poisson(lambda) profile shifted by `shift` into Poisson(mu) and
// Poisson(lambda - mu) with shifts shift1 + shift2 = shift. Verifies the
// recombination at the given truncation. Throws RateOutOfRange unless
// 0 <= mu <= lambda.
RaikovSplit raikov_split(double lambda, double mu, int shift, int shift1, int truncation = 80);

// --------------------------------------------------------- canonical form --

struct CanonicalForm {
    double alpha_abs = 0.0;            // nonnegative amplitude
    int shift_k = 0;
    std::vector<double> phases;        // theta_n removed by the phase unitary
    double fit_residual = 0.0;         // sup-norm Poisson pmf mismatch
    double roundtrip_fidelity = 0.0;   // rebuilt state vs input
};

// Recognizes a shifted, phased coherent ladder state and returns its
// canonical parameters (real alpha >= 0, shift, phase profile). Moment
// pre-check: |mean - variance| <= 1e-6 in index units; pmf fit to 1e-8.
// Throws NotInC otherwise.
CanonicalForm canonical_form(const LadderState& psi);

// Poisson pmf on 0..n-1 (renormalized tail mass goes unassigned; callers
// compare against kTailTol-truncated states).
std::vector<double> poisson_pmf(double lambda, int n);

// Best-fit Poisson rate and sup-norm residual for a distribution anchored
// at its minimum index.
std::pair<double, double> poisson_fit(const EnergyDistribution& p);

} // namespace cwork
