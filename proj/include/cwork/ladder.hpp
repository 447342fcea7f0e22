#pragma once

#include <complex>
#include <vector>

#include "cwork/errors.hpp"

namespace cwork {

using Complex = std::complex<double>;

// Weights below this are stored as exact zeros.
inline constexpr double kWeightFloor = 1e-15;
// Normalization must hold to this tolerance on construction.
inline constexpr double kNormTol = 1e-12;
// Energies closer than this count as degenerate.
inline constexpr double kDegeneracyTol = 1e-9;
// Truncated tails must stay below this mass.
inline constexpr double kTailTol = 1e-12;

// ------------------------------------------------------------ spectrum -----

// Energy levels of a discrete-spectrum Hamiltonian, indexed by ladder
// position. An empty `levels` table means the unit ladder E(n) = n, defined
// for every integer n; otherwise levels[i] is the energy at index lo + i.
struct EnergySpectrum {
    int lo = 0;
    std::vector<double> levels;
    double group_tol = kDegeneracyTol;

    static EnergySpectrum unit_ladder() { return {}; }
    static EnergySpectrum ladder(int lo, int hi, double spacing = 1.0, double shift = 0.0);
    // E(n) = hnu * n + zero_point for n = 0 .. n_levels-1.
    static EnergySpectrum oscillator(int n_levels, double hnu, double zero_point = 0.0);

    bool is_unit() const { return levels.empty(); }
    int size() const { return static_cast<int>(levels.size()); }
    int hi() const { return lo + size() - 1; } // inclusive; unit ladder: unbounded
    double energy(int index) const;
    bool contains(int index) const { return is_unit() || (index >= lo && index <= hi()); }

    // Indices grouped by energy within group_tol, ascending in energy.
    std::vector<std::vector<int>> degenerate_groups(int window_lo, int window_hi) const;
};

// ----------------------------------------------------------- distribution --

// Probability distribution over ladder indices. weights[i] is the mass at
// index offset + i; weights sum to 1 and entries below kWeightFloor are
// exact zeros. The window may contain interior zeros (spaced supports).
struct EnergyDistribution {
    int offset = 0;
    std::vector<double> weights;

    // Validates nonnegativity and normalization (within kNormTol), applies
    // the weight floor, trims zero margins and renormalizes exactly.
    static EnergyDistribution from(int offset, std::vector<double> weights);
    static EnergyDistribution point(int index) { return {index, {1.0}}; }
    static EnergyDistribution uniform(const std::vector<int>& indices);

    int size() const { return static_cast<int>(weights.size()); }
    int support_lo() const { return offset; }
    int support_hi() const { return offset + size() - 1; }
    double at(int index) const;
    double max_weight() const;
    double total() const;

    double mean() const;     // in index units
    double variance() const; // in index units
    double mean_energy(const EnergySpectrum& h) const;
    double variance_energy(const EnergySpectrum& h) const;
};

// ------------------------------------------------------------- state -------

// Pure state with finite support on a ladder. amplitudes[i] belongs to index
// offset + i; squared amplitudes sum to 1 within kNormTol. The spectrum
// gives each index its energy and defaults to the unit ladder.
struct LadderState {
    int offset = 0;
    std::vector<Complex> amplitudes;
    EnergySpectrum spectrum;

    // Validates normalization (within kNormTol after flooring), trims zero
    // margins and renormalizes exactly.
    static LadderState from(int offset, std::vector<Complex> amplitudes,
                            EnergySpectrum spectrum = EnergySpectrum::unit_ladder());
    static LadderState basis(int index,
                             EnergySpectrum spectrum = EnergySpectrum::unit_ladder());

    int size() const { return static_cast<int>(amplitudes.size()); }
    int support_lo() const { return offset; }
    int support_hi() const { return offset + size() - 1; }
    Complex at(int index) const;
    double norm_sq() const;
    double mean_energy() const;

    LadderState conjugate() const;              // entrywise, energy basis
    LadderState evolved(double t) const;        // e^{-iHt}, phases only
};

// Squared-modulus fidelity |<a|b>|^2; supports need not align.
double fidelity(const LadderState& a, const LadderState& b);

// ------------------------------------------------------- coherent states ---

// Parameters of a shifted, phased coherent ladder state: amplitude at index
// k + n is e^{i phase[n]} e^{-|alpha|^2/2} alpha^n / sqrt(n!). Empty phases
// mean all zero; the canonical member has real alpha >= 0 and no phases.
struct CoherentLadderParams {
    Complex alpha;
    int shift_k = 0;
    std::vector<double> phases;
};

// Builds the state on the window [k, k + truncation). Throws
// TruncationTooSmall when the discarded tail mass is >= kTailTol.
// The pre-normalization deficit is reported through discarded_tail.
LadderState make_coherent_state(const CoherentLadderParams& params, int truncation,
                                double* discarded_tail = nullptr);

// ------------------------------------------------------------ operations ---

// |a_n|^2 with the weight floor applied.
EnergyDistribution energy_distribution(const LadderState& psi);

// (q * r)(n) = sum_j q_j r_{n-j}; offsets add.
EnergyDistribution convolve(const EnergyDistribution& q, const EnergyDistribution& r);

// n-fold convolution power.
EnergyDistribution convolve_power(const EnergyDistribution& p, int n);

// Schur-concave disorder measures.
struct DisorderFunctional {
    enum class Kind { Shannon, Renyi, MaxWeightNegated };
    Kind kind = Kind::Shannon;
    double alpha = 1.0;

    static DisorderFunctional shannon() { return {Kind::Shannon, 1.0}; }
    static DisorderFunctional renyi(double alpha); // throws InvalidRenyiOrder
    static DisorderFunctional max_weight_negated() { return {Kind::MaxWeightNegated, 0.0}; }
};

// Shannon entropy in nats, Renyi entropy of the given order, or -max weight.
double disorder(const EnergyDistribution& p, const DisorderFunctional& f);

// True iff q majorizes p: every partial sum of q's descending-sorted weights
// is >= the corresponding one of p, within 1e-12. Shorter lists are padded.
bool majorizes(const EnergyDistribution& q, const EnergyDistribution& p);

// Characteristic function sum_n p_n e^{i t n} (index units).
Complex characteristic_function(const EnergyDistribution& p, double t);

} // namespace cwork
