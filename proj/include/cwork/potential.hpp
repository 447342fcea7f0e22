#pragma once

#include <vector>

#include "cwork/ladder.hpp"

namespace cwork {

// Effective potential Lambda(beta, rho) = -log sum_n p_n e^{-beta E_n},
// evaluated in log-sum-exp form with a max-energy shift. Stable for
// beta * (spectral range) up to several thousand.
double effective_potential(double beta, const EnergyDistribution& p, const EnergySpectrum& h);
double effective_potential(double beta, const LadderState& psi);

// Energy cumulants kappa_1 .. kappa_n_max of the distribution (n_max <= 8),
// computed from central moments. Lambda(beta) = sum_n (-1)^{n+1} beta^n
// kappa_n / n! when the series converges.
std::vector<double> cumulants(const EnergyDistribution& p, const EnergySpectrum& h, int n_max);
std::vector<double> cumulants(const LadderState& psi, int n_max);

// Truncated cumulant series for Lambda at order n_max.
double cumulant_series(double beta, const std::vector<double>& kappa);

// --------------------------------------------------------- Gibbs rescale ---

// p~_k = e^{-beta E_k} p_k / sum_j e^{-beta E_j} p_j. Shifted energies are
// used internally, so for finite inputs the normalizer never underflows;
// Underflow fires only when the shifted computation itself degenerates
// (non-finite energies, beta, or weights).
EnergyDistribution gibbs_rescale(const EnergyDistribution& p, const EnergySpectrum& h,
                                 double beta);

// Amplitude version: a~_k = a_k e^{-beta E_k / 2}, renormalized. Phases are
// untouched, so rescale and dephasing commute.
LadderState gibbs_rescale(const LadderState& psi, double beta);

// Generic amplitude vector over explicitly listed per-element energies
// (used for composite spaces; rescaling on one subsystem passes that
// subsystem's energy for each basis element).
std::vector<Complex> gibbs_rescale_amplitudes(const std::vector<Complex>& amps,
                                              const std::vector<double>& energies, double beta);

// ------------------------------------------------------- mean coherence ----

// Mean coherence chi_m at inverse temperature beta, with the 4 pi variance
// convention: chi = 4 pi kappa_2. The closed form is
//   (beta^2 / 8 pi) chi_m = beta(<E>_p - <E>_p~) - S(p~ || p),
// and beta_m in [0, beta] solves
//   Lambda(beta) = beta <E>_p - (beta^2 / 2) kappa_2(p~ at beta_m).
struct MeanCoherenceReport {
    double beta = 0.0;
    double chi_m = 0.0;
    double beta_m = 0.0;
    double energy_term = 0.0;     // beta (<E>_p - <E>_p~)
    double divergence_term = 0.0; // S(p~ || p)
    double kappa2_at_beta_m = 0.0;
    std::vector<double> beta_m_roots; // all roots found, ascending
};

// Roots are located on a 512-point grid over [0, beta] and refined by
// bisection (200-iteration cap); the smallest root is primary. Throws
// RootNotFound when no sign change exists (with diagnostics in the message).
MeanCoherenceReport mean_coherence(const EnergyDistribution& p, const EnergySpectrum& h,
                                   double beta);
MeanCoherenceReport mean_coherence(const LadderState& psi, double beta);

// ------------------------------------------------------- variational form --

// Lambda(beta, rho) = min over distributions sigma of
//   beta <E>_sigma + S(sigma || D(rho)),
// attained at sigma = gibbs_rescale(D(rho)). The solver starts there and
// polishes with projected gradient descent until the tangent-space gradient
// norm certifies first-order stationarity.
struct VariationalReport {
    EnergyDistribution argmin;
    double value = 0.0;
    double direct_value = 0.0; // effective_potential on the same inputs
    double stationarity = 0.0; // max KKT residual over the window
    int iterations = 0;
};

// Throws NotFullRank when the dephased state has a zero weight strictly
// inside its support window.
VariationalReport variational_potential(const EnergyDistribution& p, const EnergySpectrum& h,
                                        double beta);

// ------------------------------------------------------ property report ----

// Checks of the potential's analytic properties on a beta grid.
struct PotentialPropertyReport {
    std::vector<double> beta_grid;
    std::vector<double> lambda_values;
    bool concave = false;            // second differences <= 1e-8
    bool monotone_on_grid = false;   // nondecreasing along the grid
    bool h_nonnegative = false;      // min support energy >= 0
    bool monotone_iff_nonnegative = false; // certified both ways
    bool jensen_upper = false;       // Lambda <= beta <E>
    bool hoeffding_lower = false;    // Lambda >= beta <E> - beta^2 range^2 / 8
    bool support_bounds = false;     // beta E_min <= Lambda <= beta E_max
    bool high_t_limit = false;       // Lambda(s beta)/s -> beta <E> as s -> 0
    bool low_t_limit = false;        // Lambda(s beta)/s -> beta E_min as s -> inf
    bool all_hold = false;
};

PotentialPropertyReport check_potential_properties(const EnergyDistribution& p,
                                                   const EnergySpectrum& h,
                                                   const std::vector<double>& beta_grid);

// Relative entropy S(a || b) = sum a_n log(a_n / b_n); +inf (throws) if
// supp(a) is not inside supp(b).
double relative_entropy(const EnergyDistribution& a, const EnergyDistribution& b);

} // namespace cwork
