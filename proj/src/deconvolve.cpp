#include "cwork/deconvolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cwork/nnls.hpp"
#include "cwork/rng.hpp"

namespace cwork {

namespace {

// N x (len_f) convolution matrix: (C_g f)[n] = sum_j g[n - j] f[j].
Eigen::MatrixXd convolution_matrix(const Eigen::VectorXd& g, int len_f) {
    const int n = static_cast<int>(g.size()) + len_f - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, len_f);
    for (int j = 0; j < len_f; ++j)
        for (int i = 0; i < g.size(); ++i) c(i + j, j) = g[i];
    return c;
}

double sup_residual(const Eigen::VectorXd& q, const Eigen::VectorXd& r,
                    const Eigen::VectorXd& p) {
    Eigen::VectorXd conv = Eigen::VectorXd::Zero(p.size());
    for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < r.size(); ++j) conv[i + j] += q[i] * r[j];
    return (conv - p).cwiseAbs().maxCoeff();
}

bool nearly_same(const EnergyDistribution& a, const EnergyDistribution& b) {
    if (a.offset != b.offset || a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (std::abs(a.weights[static_cast<std::size_t>(i)] -
                     b.weights[static_cast<std::size_t>(i)]) > 1e-9)
            return false;
    return true;
}

Eigen::VectorXd restart_init(int len, int restart, double rate_hint, Rng& rng) {
    Eigen::VectorXd v(len);
    if (restart == 0) {
        v.setConstant(1.0 / len);
        return v;
    }
    if (restart == 1 || restart == 2) {
        // Poisson-shaped starts: first the moment-apportioned rate (splitting
        // the input mean by support extent lands inside the factor family for
        // inputs that are themselves Poisson), then a drawn rate
        const double rate = restart == 1 ? std::max(0.05, rate_hint)
                                         : std::max(0.05, rng.uniform() * len);
        double log_fact = 0.0;
        for (int i = 0; i < len; ++i) {
            if (i > 0) log_fact += std::log(static_cast<double>(i));
            v[i] = std::exp(-rate + i * std::log(rate) - log_fact);
        }
    } else {
        for (int i = 0; i < len; ++i) v[i] = 0.05 + rng.uniform();
    }
    v /= v.sum();
    return v;
}

} // namespace

DeconvolveResult deconvolve(const EnergyDistribution& p, const DeconvolveOptions& options) {
    const int n = p.size();
    if (n > options.hard_cap)
        throw SupportTooLarge("deconvolve: support window " + std::to_string(n) +
                              " exceeds cap " + std::to_string(options.hard_cap));
    DeconvolveResult result;
    result.exhaustive = n <= options.exhaustive_cap;
    if (n == 1) return result;

    Eigen::VectorXd pv(n);
    for (int i = 0; i < n; ++i) pv[i] = p.weights[static_cast<std::size_t>(i)];
    const int extent = n - 1;
    double mean_idx = 0.0;
    for (int i = 0; i < n; ++i) mean_idx += i * pv[i];

    for (int ext_q = 1; ext_q < extent; ++ext_q) {
        const int len_q = ext_q + 1;
        const int len_r = extent - ext_q + 1;
        const double rate_hint = mean_idx * (len_r - 1.0) / extent;
        double best_residual = std::numeric_limits<double>::infinity();
        Eigen::VectorXd best_q, best_r;
        for (int restart = 0; restart < options.restarts; ++restart) {
            Rng rng(Rng::derive(options.seed,
                                static_cast<std::uint64_t>(ext_q) * 1024 +
                                    static_cast<std::uint64_t>(restart)));
            Eigen::VectorXd r = restart_init(len_r, restart, rate_hint, rng);
            Eigen::VectorXd q = Eigen::VectorXd::Constant(len_q, 1.0 / len_q);
            double prev = std::numeric_limits<double>::infinity();
            for (int it = 0; it < 500; ++it) {
                q = nnls(convolution_matrix(r, len_q), pv);
                const double qs = q.sum();
                if (qs <= 0.0) break;
                q /= qs;
                r = nnls(convolution_matrix(q, len_r), pv);
                if (r.sum() <= 0.0) break;
                const double res = sup_residual(q, r, pv);
                if (std::abs(prev - res) < options.converge_tol) {
                    prev = res;
                    break;
                }
                prev = res;
            }
            if (q.sum() <= 0.0 || r.sum() <= 0.0) continue;
            const double res = sup_residual(q, r, pv);
            if (res < best_residual) {
                best_residual = res;
                best_q = q;
                best_r = r;
            }
        }
        if (!std::isfinite(best_residual) || best_residual > options.tol) continue;
        // exact normalization before the acceptance checks
        best_q /= best_q.sum();
        best_r /= best_r.sum();
        const double res = sup_residual(best_q, best_r, pv);
        if (res > options.tol) continue;
        std::vector<double> qw(best_q.data(), best_q.data() + best_q.size());
        std::vector<double> rw(best_r.data(), best_r.data() + best_r.size());
        EnergyDistribution q_t = EnergyDistribution::from(0, std::move(qw));
        EnergyDistribution r_t = EnergyDistribution::from(p.offset, std::move(rw));
        if (q_t.max_weight() > kTrivialFactor || r_t.max_weight() > kTrivialFactor) continue;
        // canonical anchoring: first factor's support starts at 0
        const int shift = q_t.offset;
        q_t.offset = 0;
        r_t.offset += shift;
        FactorPair pair{std::move(q_t), std::move(r_t), res};
        bool duplicate = false;
        for (const FactorPair& f : result.factors)
            if (nearly_same(f.first, pair.first) && nearly_same(f.second, pair.second))
                duplicate = true;
        if (!duplicate) result.factors.push_back(std::move(pair));
    }

    std::stable_sort(result.factors.begin(), result.factors.end(),
                     [](const FactorPair& a, const FactorPair& b) {
                         if (a.second.size() != b.second.size())
                             return a.second.size() < b.second.size();
                         return a.residual < b.residual;
                     });
    result.decomposable = !result.factors.empty();
    return result;
}

bool is_decomposable(const EnergyDistribution& p, const DeconvolveOptions& options) {
    return deconvolve(p, options).decomposable;
}

// ---------------------------------------------------------- Poisson split --

std::vector<double> poisson_pmf(double lambda, int n) {
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    if (lambda < 0.0) throw std::invalid_argument("poisson_pmf: negative rate");
    if (lambda == 0.0) {
        w[0] = 1.0;
        return w;
    }
    double log_fact = 0.0;
    const double log_lambda = std::log(lambda);
    for (int i = 0; i < n; ++i) {
        if (i > 0) log_fact += std::log(static_cast<double>(i));
        w[static_cast<std::size_t>(i)] = std::exp(-lambda + i * log_lambda - log_fact);
    }
    return w;
}

std::pair<double, double> poisson_fit(const EnergyDistribution& p) {
    const double lambda = p.mean() - p.support_lo();
    const std::vector<double> pmf = poisson_pmf(lambda, p.size());
    double res = 0.0;
    for (int i = 0; i < p.size(); ++i)
        res = std::max(res, std::abs(p.weights[static_cast<std::size_t>(i)] -
                                     pmf[static_cast<std::size_t>(i)]));
    return {lambda, res};
}

RaikovSplit raikov_split(double lambda, double mu, int shift, int shift1, int truncation) {
    if (!(lambda >= 0.0) || !(mu >= 0.0) || mu > lambda)
        throw RateOutOfRange("raikov_split: need 0 <= mu <= lambda, got mu = " +
                             std::to_string(mu) + ", lambda = " + std::to_string(lambda));
    RaikovSplit split;
    split.mu = mu;
    split.nu = lambda - mu;
    split.shift1 = shift1;
    split.shift2 = shift - shift1;
    split.trivial = split.mu < 1e-12 || split.nu < 1e-12;

    auto truncated = [&](double rate, int at) {
        std::vector<double> w = poisson_pmf(rate, truncation);
        return EnergyDistribution::from(at, std::move(w));
    };
    const EnergyDistribution recombined =
        convolve(truncated(split.mu, split.shift1), truncated(split.nu, split.shift2));
    const EnergyDistribution direct = truncated(lambda, shift);
    const int lo = std::min(recombined.support_lo(), direct.support_lo());
    const int hi = std::max(recombined.support_hi(), direct.support_hi());
    double tv = 0.0;
    for (int k = lo; k <= hi; ++k) tv += std::abs(recombined.at(k) - direct.at(k));
    split.roundtrip_tv = 0.5 * tv;
    return split;
}

// --------------------------------------------------------- canonical form --

CanonicalForm canonical_form(const LadderState& psi) {
    const EnergyDistribution p = energy_distribution(psi);
    const int k = p.support_lo();
    const double mean_rel = p.mean() - k;
    const double var = p.variance();
    if (std::abs(mean_rel - var) > 1e-6)
        throw NotInC("canonical_form: mean " + std::to_string(mean_rel) + " and variance " +
                     std::to_string(var) + " differ by more than 1e-6");
    const double lambda = mean_rel;
    const std::vector<double> pmf = poisson_pmf(lambda, p.size());
    double fit = 0.0;
    for (int i = 0; i < p.size(); ++i)
        fit = std::max(fit, std::abs(p.weights[static_cast<std::size_t>(i)] -
                                     pmf[static_cast<std::size_t>(i)]));
    // mass the fitted profile would place beyond the window must be tail-small
    double beyond = 1.0;
    for (double w : pmf) beyond -= w;
    if (fit > 1e-8 || beyond > 1e-8)
        throw NotInC("canonical_form: profile mismatch " + std::to_string(std::max(fit, beyond)) +
                     " exceeds 1e-8");

    CanonicalForm form;
    form.alpha_abs = std::sqrt(lambda);
    form.shift_k = k;
    form.fit_residual = std::max(fit, std::max(beyond, 0.0));
    form.phases.resize(static_cast<std::size_t>(p.size()), 0.0);
    for (int i = 0; i < p.size(); ++i) {
        const Complex a = psi.at(k + i);
        if (a != Complex(0.0, 0.0))
            form.phases[static_cast<std::size_t>(i)] = std::arg(a);
    }
    // rebuild |alpha, k> with the recovered phases and compare
    std::vector<Complex> amps(static_cast<std::size_t>(p.size()));
    double log_fact = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (i > 0) log_fact += std::log(static_cast<double>(i));
        const double mag = lambda > 0.0
                               ? std::exp(-0.5 * lambda + 0.5 * i * std::log(lambda) -
                                          0.5 * log_fact)
                               : (i == 0 ? 1.0 : 0.0);
        amps[static_cast<std::size_t>(i)] =
            std::polar(mag, form.phases[static_cast<std::size_t>(i)]);
    }
    const LadderState rebuilt = LadderState::from(k, std::move(amps), psi.spectrum);
    form.roundtrip_fidelity = fidelity(rebuilt, psi);
    return form;
}

} // namespace cwork
