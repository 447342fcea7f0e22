#include "cwork/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cwork/cwp.hpp"
#include "cwork/potential.hpp"
#include "cwork/rng.hpp"

namespace cwork {

namespace {

// -log sum e^{-beta E} via max shift
double log_partition_levels(double beta, const std::vector<double>& levels) {
    if (levels.empty()) throw std::invalid_argument("log_partition_levels: empty block");
    const double e_min = *std::min_element(levels.begin(), levels.end());
    double s = 0.0;
    for (double e : levels) s += std::exp(-beta * (e - e_min));
    return -beta * e_min + std::log(s);
}

} // namespace

// ------------------------------------------------------------- bath --------

BathModel BathModel::make(std::vector<double> h0, std::vector<double> h1, double beta,
                          std::vector<double> other) {
    if (h0.empty() || h1.empty())
        throw std::invalid_argument("BathModel: blocks must be non-empty");
    if (!(beta > 0.0)) throw std::invalid_argument("BathModel: beta must be > 0");
    BathModel b;
    b.beta = beta;
    b.h0 = std::move(h0);
    b.h1 = std::move(h1);
    b.other = std::move(other);
    const double log_z0 = log_partition_levels(beta, b.h0);
    const double log_z1 = log_partition_levels(beta, b.h1);
    b.free_energy0 = -log_z0 / beta;
    b.free_energy1 = -log_z1 / beta;
    b.delta_f = b.free_energy1 - b.free_energy0;
    auto weights = [beta](const std::vector<double>& h, double log_z) {
        std::vector<double> w(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            w[i] = std::exp(-beta * h[i] - log_z);
        return w;
    };
    b.gibbs0 = weights(b.h0, log_z0);
    b.gibbs1 = weights(b.h1, log_z1);
    return b;
}

std::vector<double> BathModel::energies() const {
    std::vector<double> e;
    e.reserve(static_cast<std::size_t>(dim()));
    e.insert(e.end(), h0.begin(), h0.end());
    e.insert(e.end(), h1.begin(), h1.end());
    e.insert(e.end(), other.begin(), other.end());
    return e;
}

int BathModel::block_begin(int block) const {
    switch (block) {
    case 0: return 0;
    case 1: return static_cast<int>(h0.size());
    case 2: return static_cast<int>(h0.size() + h1.size());
    default: throw std::invalid_argument("BathModel: block index out of range");
    }
}

int BathModel::block_size(int block) const {
    switch (block) {
    case 0: return static_cast<int>(h0.size());
    case 1: return static_cast<int>(h1.size());
    case 2: return static_cast<int>(other.size());
    default: throw std::invalid_argument("BathModel: block index out of range");
    }
}

// ------------------------------------------------------ protocol unitary ---

ProtocolUnitary sample_protocol_unitary(const std::vector<double>& s_energies,
                                        const BathModel& bath, std::uint64_t seed) {
    if (s_energies.empty())
        throw std::invalid_argument("sample_protocol_unitary: empty system spectrum");
    ProtocolUnitary v;
    v.s_energies = s_energies;
    v.b_energies = bath.energies();
    const int dim = v.dim_s() * v.dim_b();
    v.u.dim = dim;
    v.u.basis_energies.resize(static_cast<std::size_t>(dim));
    for (int s = 0; s < v.dim_s(); ++s)
        for (int b = 0; b < v.dim_b(); ++b)
            v.u.basis_energies[static_cast<std::size_t>(v.flat(s, b))] =
                s_energies[static_cast<std::size_t>(s)] +
                v.b_energies[static_cast<std::size_t>(b)];
    v.u.groups = group_by_energy(v.u.basis_energies, kDegeneracyTol);
    v.u.blocks.reserve(v.u.groups.size());
    for (std::size_t g = 0; g < v.u.groups.size(); ++g) {
        const int d = static_cast<int>(v.u.groups[g].size());
        Rng rng(Rng::derive(seed, g));
        Eigen::MatrixXd a(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                const double x = rng.normal();
                a(i, j) = x;
                a(j, i) = x;
            }
        v.u.blocks.push_back(exp_i_symmetric(a));
    }
    return v;
}

Matrix system_bath_projector(const LadderState& psi, int block, const BathModel& bath,
                             int dim_s) {
    if (psi.support_lo() < 0 || psi.support_hi() >= dim_s)
        throw std::invalid_argument("system_bath_projector: state outside [0, dim_s)");
    const int dim_b = bath.dim();
    const int begin = bath.block_begin(block);
    const int size = bath.block_size(block);
    Matrix proj = Matrix::Zero(dim_s * dim_b, dim_s * dim_b);
    for (int s = 0; s < dim_s; ++s)
        for (int t = 0; t < dim_s; ++t) {
            const Complex c = psi.at(s) * std::conj(psi.at(t));
            if (c == Complex(0.0, 0.0)) continue;
            for (int b = begin; b < begin + size; ++b)
                proj(s * dim_b + b, t * dim_b + b) = c;
        }
    return proj;
}

// -------------------------------------------------- trajectory probability -

double trajectory_probability(const Matrix& final_proj, const Matrix& initial_proj,
                              const ProtocolUnitary& v, double beta) {
    const int dim = v.u.dim;
    if (final_proj.rows() != dim || initial_proj.rows() != dim)
        throw std::invalid_argument("trajectory_probability: projector dimension mismatch");
    // shift by the lowest energy carrying initial weight
    double e_ref = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim; ++i)
        if (std::abs(initial_proj(i, i)) > 1e-15)
            e_ref = std::min(e_ref, v.u.basis_energies[static_cast<std::size_t>(i)]);
    if (!std::isfinite(e_ref))
        throw DegenerateConstraint("trajectory_probability: initial projector has no support");
    Eigen::VectorXd w(dim);
    for (int i = 0; i < dim; ++i)
        w[i] = std::exp(-0.5 * beta *
                        (v.u.basis_energies[static_cast<std::size_t>(i)] - e_ref));
    Matrix gamma = w.asDiagonal().toDenseMatrix().cast<Complex>() * initial_proj *
                   w.asDiagonal().toDenseMatrix().cast<Complex>();
    const double norm = gamma.trace().real();
    if (!(norm >= 1e-300))
        throw DegenerateConstraint("trajectory_probability: thermal weight " +
                                   std::to_string(norm) + " vanishes");
    gamma /= norm;
    const Matrix vd = v.u.dense();
    const double p = (final_proj * vd * gamma * vd.adjoint()).trace().real();
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::logic_error("trajectory_probability: value " + std::to_string(p) +
                               " outside [0, 1]");
    return std::min(std::max(p, 0.0), 1.0);
}

// ------------------------------------------------------------ crooks -------

CrooksReport crooks_check(const LadderState& psi0, const LadderState& psi1,
                          const BathModel& bath, const ProtocolUnitary& v) {
    const int dim_s = v.dim_s();
    const Matrix pi0 = system_bath_projector(psi0, 0, bath, dim_s);
    const Matrix pi1 = system_bath_projector(psi1, 1, bath, dim_s);
    CrooksReport rep;
    rep.beta = bath.beta;
    rep.delta_f = bath.delta_f;
    rep.lambda0 = effective_potential(bath.beta, psi0);
    rep.lambda1 = effective_potential(bath.beta, psi1);
    rep.forward = trajectory_probability(pi1, pi0, v, bath.beta);
    rep.reverse = trajectory_probability(pi0.conjugate(), pi1.conjugate(), v, bath.beta);
    rep.rhs_exponent = -bath.beta * rep.delta_f - (rep.lambda1 - rep.lambda0);
    if (rep.reverse < 1e-14) {
        std::ostringstream msg;
        msg << "crooks_check: reverse probability " << rep.reverse
            << " below 1e-14 (forward " << rep.forward << ")";
        throw ReverseZero(msg.str());
    }
    rep.lhs_ratio = rep.forward / rep.reverse;
    rep.agreement = std::abs(rep.lhs_ratio / std::exp(rep.rhs_exponent) - 1.0);
    return rep;
}

// ----------------------------------------------- potential-difference FT ---

CoherentWorkFtReport coherent_work_ft_check(const LadderState& psi0, const LadderState& psi1,
                                            const LadderState& omega,
                                            const std::vector<double>& beta_grid) {
    if (beta_grid.empty())
        throw std::invalid_argument("coherent_work_ft_check: empty beta grid");
    double dev_forward = 0.0, dev_reverse = 0.0;
    for (double beta : beta_grid) {
        const double l0 = effective_potential(beta, psi0);
        const double l1 = effective_potential(beta, psi1);
        const double lw = effective_potential(beta, omega);
        dev_forward = std::max(dev_forward, std::abs(l0 - (l1 + lw)));
        dev_reverse = std::max(dev_reverse, std::abs(l1 - (l0 + lw)));
    }
    CoherentWorkFtReport rep;
    constexpr double kTol = 1e-9;
    if (dev_forward <= kTol) {
        rep.direction = CwfDirection::ForwardOutput;
        rep.max_deviation = dev_forward;
    } else if (dev_reverse <= kTol) {
        rep.direction = CwfDirection::ReverseInput;
        rep.max_deviation = dev_reverse;
    } else {
        std::ostringstream msg;
        msg << "coherent_work_ft_check: neither identity holds (forward deviation "
            << dev_forward << ", reverse " << dev_reverse << ")";
        throw NoMatch(msg.str());
    }
    // cross-build the process on the energy distributions
    const bool forward = rep.direction == CwfDirection::ForwardOutput;
    const EnergyDistribution p_in = energy_distribution(forward ? psi0 : psi1);
    const EnergyDistribution p_out = energy_distribution(forward ? psi1 : psi0);
    const EnergyDistribution p_w = energy_distribution(omega);
    const EnergyConservingUnitary u = build_cwp_unitary(p_in, p_out, p_w);
    std::vector<Complex> amps(p_in.weights.size());
    for (std::size_t i = 0; i < p_in.weights.size(); ++i)
        amps[i] = Complex(std::sqrt(p_in.weights[i]), 0.0);
    const CwpRecord record = apply_cwp(u, LadderState::from(p_in.offset, std::move(amps)));
    rep.cwp_fidelity = record.product_fidelity;
    rep.cwp_verified = record.product_fidelity >= 1.0 - 1e-8;
    return rep;
}

// ------------------------------------------------------- semi-classical ----

SemiclassicalReport semiclassical_relation(double alpha0, double alpha1, double beta,
                                           double hnu, const BathModel& bath, int truncation,
                                           double h, double m) {
    if (!(hnu > 0.0)) throw std::invalid_argument("semiclassical_relation: hnu must be > 0");
    const EnergySpectrum osc = EnergySpectrum::oscillator(truncation, hnu, 0.5 * hnu);
    auto coherent = [&](double a) {
        LadderState s = make_coherent_state({Complex(a, 0.0), 0, {}}, truncation);
        s.spectrum = osc;
        return s;
    };
    const LadderState s0 = coherent(alpha0);
    const LadderState s1 = coherent(alpha1);
    SemiclassicalReport rep;
    rep.beta = beta;
    rep.hnu = hnu;
    const double x = std::exp(-beta * hnu);
    rep.hnu_th = 0.5 * hnu * (1.0 + x) / (1.0 - x);
    rep.w_s = s1.mean_energy() - s0.mean_energy();
    const LadderState t0 = gibbs_rescale(s0, beta);
    const LadderState t1 = gibbs_rescale(s1, beta);
    rep.w_s_tilde = t1.mean_energy() - t0.mean_energy();
    rep.w_bar_b = -0.5 * (rep.w_s + rep.w_s_tilde);
    rep.delta_f = bath.delta_f;
    const double d_lambda = effective_potential(beta, s1) - effective_potential(beta, s0);
    rep.lhs_log_ratio = -beta * rep.delta_f - d_lambda;
    rep.rhs_log_ratio = -beta * rep.delta_f + rep.w_bar_b / rep.hnu_th;
    rep.agreement = std::abs(rep.lhs_log_ratio - rep.rhs_log_ratio);
    rep.lambda_db = h / std::sqrt(m * (rep.hnu_th - 0.5 * hnu));
    return rep;
}

// ------------------------------------------------- complementary channel ---

Matrix complementary_channel(const ProtocolUnitary& v, const Matrix& rho_s,
                             const BathModel& bath) {
    const int dim_s = v.dim_s();
    const int dim_b = v.dim_b();
    if (rho_s.rows() != dim_s || rho_s.cols() != dim_s)
        throw std::invalid_argument("complementary_channel: rho_S dimension mismatch");
    if (bath.dim() != dim_b)
        throw std::invalid_argument("complementary_channel: bath dimension mismatch");
    Matrix joint = Matrix::Zero(v.u.dim, v.u.dim);
    const int begin = bath.block_begin(0);
    for (int s = 0; s < dim_s; ++s)
        for (int t = 0; t < dim_s; ++t) {
            if (rho_s(s, t) == Complex(0.0, 0.0)) continue;
            for (int b = 0; b < bath.block_size(0); ++b)
                joint(v.flat(s, begin + b), v.flat(t, begin + b)) =
                    rho_s(s, t) * bath.gibbs0[static_cast<std::size_t>(b)];
        }
    const Matrix vd = v.u.dense();
    const Matrix evolved = vd * joint * vd.adjoint();
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int b = 0; b < dim_b; ++b)
        for (int c = 0; c < dim_b; ++c)
            for (int s = 0; s < dim_s; ++s) out(b, c) += evolved(v.flat(s, b), v.flat(s, c));
    return out;
}

// ------------------------------------------------------------- tpm ---------

TpmReport tpm_average_work(const Matrix& rho, const Matrix& u,
                           const std::vector<double>& e_initial,
                           const std::vector<double>& e_final) {
    const int d = static_cast<int>(e_initial.size());
    if (rho.rows() != d || u.rows() != d || e_final.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("tpm_average_work: dimension mismatch");
    // collect distinct work values w = E_f[j] - E_i[i]
    std::vector<double> values;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double w = e_final[static_cast<std::size_t>(j)] -
                             e_initial[static_cast<std::size_t>(i)];
            bool found = false;
            for (double x : values)
                if (std::abs(x - w) <= kDegeneracyTol) found = true;
            if (!found) values.push_back(w);
        }
    std::sort(values.begin(), values.end());

    TpmReport rep;
    rep.w_values = values;
    rep.povm.assign(values.size(), Matrix::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double w = e_final[static_cast<std::size_t>(j)] -
                             e_initial[static_cast<std::size_t>(i)];
            std::size_t slot = 0;
            while (std::abs(values[slot] - w) > kDegeneracyTol) ++slot;
            rep.povm[slot](i, i) += std::norm(u(j, i)); // p_{j|i}
        }
    Matrix completeness = Matrix::Zero(d, d);
    for (const Matrix& mw : rep.povm) completeness += mw;
    rep.completeness_residual =
        (completeness - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();

    for (std::size_t slot = 0; slot < values.size(); ++slot)
        rep.w_tpm += values[slot] * (rep.povm[slot] * rho).trace().real();

    Matrix hi = Matrix::Zero(d, d), hf = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        hi(i, i) = e_initial[static_cast<std::size_t>(i)];
        hf(i, i) = e_final[static_cast<std::size_t>(i)];
    }
    rep.w_operator = ((u.adjoint() * hf * u - hi) * rho).trace().real();
    return rep;
}

// ------------------------------------------------------------- iid limit ---

IidLimitReport iid_limit_check(const EnergyDistribution& psi, const EnergyDistribution& phi,
                               double spacing, const std::vector<int>& n_list, double beta0,
                               double lambda_scale) {
    if (!(lambda_scale > 0.0))
        throw std::invalid_argument("iid_limit_check: lambda_scale must be > 0");
    IidLimitReport rep;
    rep.n_list = n_list;
    const double d_mu = spacing * (psi.mean() - phi.mean());
    const double d_var = spacing * spacing * (psi.variance() - phi.variance());
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("iid_limit_check: n must be >= 1");
        const double beta_n = beta0 / (std::sqrt(static_cast<double>(n)) * lambda_scale);
        const EnergyDistribution psi_n = convolve_power(psi, n);
        const EnergyDistribution phi_n = convolve_power(phi, n);
        const EnergySpectrum h_psi =
            EnergySpectrum::ladder(psi_n.support_lo(), psi_n.support_hi(), spacing);
        const EnergySpectrum h_phi =
            EnergySpectrum::ladder(phi_n.support_lo(), phi_n.support_hi(), spacing);
        const double exponent = effective_potential(beta_n, psi_n, h_psi) -
                                effective_potential(beta_n, phi_n, h_phi);
        const double gaussian = n * (beta_n * d_mu - 0.5 * beta_n * beta_n * d_var);
        rep.beta_values.push_back(beta_n);
        rep.exponents.push_back(exponent);
        rep.gaussian.push_back(gaussian);
        rep.deviations.push_back(std::abs(exponent - gaussian));
    }
    rep.monotone_decreasing = true;
    for (std::size_t i = 1; i < rep.deviations.size(); ++i)
        if (rep.deviations[i] > rep.deviations[i - 1]) rep.monotone_decreasing = false;
    return rep;
}

// ------------------------------------------------------------ multipartite -

MultipartiteReport multipartite_bound_check(const EnergyDistribution& profile, int n, int k,
                                            double epsilon, double beta) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("multipartite_bound_check: need 1 <= k <= n");
    if (profile.support_lo() < 0 || profile.support_hi() > n)
        throw std::invalid_argument("multipartite_bound_check: profile outside [0, n]");
    MultipartiteReport rep;
    rep.n = n;
    rep.k = k;
    rep.s = n / k;
    // collective spin-z eigenvalue for m flipped spins is (n - 2m) / 2
    double mean = 0.0;
    for (int i = 0; i < profile.size(); ++i)
        mean += profile.weights[static_cast<std::size_t>(i)] *
                0.5 * (n - 2.0 * (profile.offset + i));
    double var = 0.0;
    for (int i = 0; i < profile.size(); ++i) {
        const double j = 0.5 * (n - 2.0 * (profile.offset + i));
        var += profile.weights[static_cast<std::size_t>(i)] * (j - mean) * (j - mean);
    }
    rep.variance = var;
    rep.bound = static_cast<double>(rep.s) * k * k +
                static_cast<double>(n - rep.s * k) * (n - rep.s * k);
    rep.slack = rep.bound - 4.0 * var;
    if (rep.slack < -1e-9) {
        std::ostringstream msg;
        msg << "multipartite_bound_check: 4 Var = " << 4.0 * var << " exceeds bound "
            << rep.bound << " for k = " << k << " (profile is not k-producible)";
        throw VarianceExceedsBound(msg.str());
    }
    rep.ft_quadratic = beta * epsilon * beta * epsilon * rep.bound / 8.0;
    return rep;
}

} // namespace cwork
