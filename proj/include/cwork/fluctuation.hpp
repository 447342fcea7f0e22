#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwork/block_unitary.hpp"
#include "cwork/ladder.hpp"

namespace cwork {

// ------------------------------------------------------------- bath --------

// Register bath: two level blocks H0 and H1 (plus an optional inert
// remainder), thermalized at fixed beta. Free energies use beta F = -log Z
// with the partition sum over the block alone.
struct BathModel {
    double beta = 1.0;
    std::vector<double> h0;
    std::vector<double> h1;
    std::vector<double> other;
    std::vector<double> gibbs0; // thermal weights over h0
    std::vector<double> gibbs1;
    double free_energy0 = 0.0;
    double free_energy1 = 0.0;
    double delta_f = 0.0; // F1 - F0

    static BathModel make(std::vector<double> h0, std::vector<double> h1, double beta,
                          std::vector<double> other = {});

    int dim() const {
        return static_cast<int>(h0.size() + h1.size() + other.size());
    }
    // concatenated bath basis: block0, block1, other
    std::vector<double> energies() const;
    int block_begin(int block) const; // 0, |h0|, |h0|+|h1|
    int block_size(int block) const;
};

// ------------------------------------------------------ protocol unitary ---

// Random energy-conserving symmetric unitary on system x bath. Within each
// total-energy eigenspace the block is exp(i A) with A real symmetric drawn
// from the seeded portable generator, so V = V^T holds exactly blockwise.
struct ProtocolUnitary {
    std::vector<double> s_energies;
    std::vector<double> b_energies;
    BlockUnitary u; // basis_energies holds the composite totals

    int dim_s() const { return static_cast<int>(s_energies.size()); }
    int dim_b() const { return static_cast<int>(b_energies.size()); }
    int flat(int s, int b) const { return s * dim_b() + b; }

    double symmetry_residual() const { return u.symmetry_residual(); }
    double conservation_residual() const { return u.commutation_residual(); }
};

ProtocolUnitary sample_protocol_unitary(const std::vector<double>& s_energies,
                                        const BathModel& bath, std::uint64_t seed);

// |psi><psi| (x) Pi_block as a dense composite matrix. The state's support
// must lie inside [0, dim_s).
Matrix system_bath_projector(const LadderState& psi, int block, const BathModel& bath,
                             int dim_s);

// -------------------------------------------------- trajectory probability -

// P[final | rescaled initial] = tr[ Pi_1 V Gamma(Pi_0) V^dag ] with
// Gamma(X) = e^{-beta H/2} X e^{-beta H/2} / tr(e^{-beta H} X) over the
// composite total energies. Throws DegenerateConstraint when the initial
// projector has (numerically) vanishing thermal weight.
double trajectory_probability(const Matrix& final_proj, const Matrix& initial_proj,
                              const ProtocolUnitary& v, double beta);

// ------------------------------------------------------------ crooks -------

struct CrooksReport {
    double beta = 0.0;
    double forward = 0.0;
    double reverse = 0.0;
    double lhs_ratio = 0.0;     // forward / reverse
    double rhs_exponent = 0.0;  // -beta dF - (Lambda_1 - Lambda_0)
    double agreement = 0.0;     // |lhs / exp(rhs) - 1|
    double delta_f = 0.0;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
};

// Transition between coherent-state constraints psi_0 (bath block 0) and
// psi_1 (bath block 1); reverse uses the entrywise-conjugated projectors
// with the roles swapped. Throws ReverseZero below 1e-14 (raw values are in
// the message). The states' spectra must list the system energies.
CrooksReport crooks_check(const LadderState& psi0, const LadderState& psi1,
                          const BathModel& bath, const ProtocolUnitary& v);

// ----------------------------------------------- potential-difference FT ---

enum class CwfDirection {
    ForwardOutput, // Lambda(psi0) = Lambda(psi1) + Lambda(omega): psi0 -> psi1
    ReverseInput,  // Lambda(psi1) = Lambda(psi0) + Lambda(omega): psi1 -> psi0
};

struct CoherentWorkFtReport {
    CwfDirection direction = CwfDirection::ForwardOutput;
    double max_deviation = 0.0; // of the matched identity over the grid
    bool cwp_verified = false;  // engine build + apply succeeded
    double cwp_fidelity = 0.0;
};

// Tests Lambda(beta, psi0) - Lambda(beta, psi1) = +/- Lambda(beta, omega)
// on the grid (tolerance 1e-9); on a match, cross-builds the process on the
// energy distributions. Throws NoMatch when neither sign holds.
CoherentWorkFtReport coherent_work_ft_check(const LadderState& psi0, const LadderState& psi1,
                                            const LadderState& omega,
                                            const std::vector<double>& beta_grid);

// ------------------------------------------------------- semi-classical ----

struct SemiclassicalReport {
    double beta = 0.0;
    double hnu = 0.0;
    double hnu_th = 0.0;      // mean thermal energy of the oscillator bath
    double w_s = 0.0;         // <H>_1 - <H>_0
    double w_s_tilde = 0.0;   // same for the rescaled states
    double w_bar_b = 0.0;     // -(w_s + w_s_tilde) / 2
    double delta_f = 0.0;
    double lhs_log_ratio = 0.0; // -beta dF - dLambda, numerical
    double rhs_log_ratio = 0.0; // -beta dF + w_bar_b / hnu_th
    double agreement = 0.0;     // |lhs - rhs|
    double lambda_db = 0.0;     // h / sqrt(m (hnu_th - hnu/2))
};

// Oscillator system H = hnu (n + 1/2) with coherent states alpha0 -> alpha1.
SemiclassicalReport semiclassical_relation(double alpha0, double alpha1, double beta,
                                           double hnu, const BathModel& bath, int truncation,
                                           double h = 1.0, double m = 1.0);

// ------------------------------------------------- complementary channel ---

// omega = tr_S[ V (rho_S (x) gamma_0) V^dag ]: the work state emitted into
// the bath when the system starts uncorrelated with thermal block 0.
Matrix complementary_channel(const ProtocolUnitary& v, const Matrix& rho_s,
                             const BathModel& bath);

// ------------------------------------------------------------- tpm ---------

struct TpmReport {
    double w_tpm = 0.0;      // sum_w w P(w) from the two-point scheme
    double w_operator = 0.0; // tr[(U^dag H_f U - H_i) rho]
    std::vector<double> w_values;
    std::vector<Matrix> povm; // M_w in the initial eigenbasis
    double completeness_residual = 0.0;
};

// Two-point measurement work statistics for initial/final Hamiltonians
// diagonal in the computational basis with the listed eigenvalues.
TpmReport tpm_average_work(const Matrix& rho, const Matrix& u,
                           const std::vector<double>& e_initial,
                           const std::vector<double>& e_final);

// ------------------------------------------------------------- iid limit ---

struct IidLimitReport {
    std::vector<int> n_list;
    std::vector<double> beta_values;
    std::vector<double> exponents; // Lambda difference of the n-copy profiles
    std::vector<double> gaussian;  // n (beta_n dMu - beta_n^2 dSigma^2 / 2)
    std::vector<double> deviations;
    bool monotone_decreasing = false;
};

// Macroscopic regime beta_n = beta0 / (sqrt(n) lambda_scale); n-copy
// profiles are built by repeated convolution (never tensor products).
// `spacing` converts ladder indices to energy.
IidLimitReport iid_limit_check(const EnergyDistribution& psi, const EnergyDistribution& phi,
                               double spacing, const std::vector<int>& n_list, double beta0,
                               double lambda_scale);

// ------------------------------------------------------------ multipartite -

struct MultipartiteReport {
    int n = 0, k = 0, s = 0;
    double variance = 0.0;     // Var of the collective spin-z (eigenvalues (n-2m)/2)
    double bound = 0.0;        // s k^2 + (n - s k)^2
    double slack = 0.0;        // bound - 4 Var
    double ft_quadratic = 0.0; // (beta epsilon)^2 bound / 8
    std::string remainder = "O(1/sqrt(n))";
};

// profile: distribution over the number of flipped spins m in [0, n].
// Throws VarianceExceedsBound when 4 Var > bound + 1e-9, i.e. the profile
// cannot be k-producible.
MultipartiteReport multipartite_bound_check(const EnergyDistribution& profile, int n, int k,
                                            double epsilon, double beta);

} // namespace cwork
