#include "cwork/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cwork {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// log sum_k w_k e^{-beta E_k} via max-shift; support only.
double log_partition(double beta, const EnergyDistribution& p, const EnergySpectrum& h) {
    double x_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.size(); ++i) {
        const double w = p.weights[static_cast<std::size_t>(i)];
        if (w == 0.0) continue;
        x_max = std::max(x_max, std::log(w) - beta * h.energy(p.offset + i));
    }
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        const double w = p.weights[static_cast<std::size_t>(i)];
        if (w == 0.0) continue;
        s += std::exp(std::log(w) - beta * h.energy(p.offset + i) - x_max);
    }
    return x_max + std::log(s);
}

} // namespace

double effective_potential(double beta, const EnergyDistribution& p, const EnergySpectrum& h) {
    return -log_partition(beta, p, h) + 0.0; // normalizes -0
}

double effective_potential(double beta, const LadderState& psi) {
    return effective_potential(beta, energy_distribution(psi), psi.spectrum);
}

std::vector<double> cumulants(const EnergyDistribution& p, const EnergySpectrum& h, int n_max) {
    if (n_max < 1 || n_max > 8)
        throw std::invalid_argument("cumulants: n_max must be in [1, 8]");
    const double mu = p.mean_energy(h);
    // central moments m_1 .. m_n_max
    std::vector<double> m(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int i = 0; i < p.size(); ++i) {
        const double w = p.weights[static_cast<std::size_t>(i)];
        if (w == 0.0) continue;
        const double d = h.energy(p.offset + i) - mu;
        double pw = 1.0;
        for (int n = 1; n <= n_max; ++n) {
            pw *= d;
            m[static_cast<std::size_t>(n)] += w * pw;
        }
    }
    // cumulants of the centered variable: k_n = m_n - sum_{j<n} C(n-1, j-1) k_j m_{n-j}
    std::vector<double> k(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        double acc = m[static_cast<std::size_t>(n)];
        double binom = 1.0; // C(n-1, j-1), j = 1
        for (int j = 1; j < n; ++j) {
            acc -= binom * k[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(n - j)];
            binom = binom * (n - 1 - j + 1) / j; // -> C(n-1, j)
        }
        k[static_cast<std::size_t>(n)] = acc;
    }
    std::vector<double> out(static_cast<std::size_t>(n_max));
    out[0] = mu;
    for (int n = 2; n <= n_max; ++n) out[static_cast<std::size_t>(n - 1)] = k[static_cast<std::size_t>(n)];
    return out;
}

std::vector<double> cumulants(const LadderState& psi, int n_max) {
    return cumulants(energy_distribution(psi), psi.spectrum, n_max);
}

double cumulant_series(double beta, const std::vector<double>& kappa) {
    double s = 0.0;
    double term = 1.0; // beta^n / n!
    double sign = 1.0;
    for (std::size_t n = 1; n <= kappa.size(); ++n) {
        term *= beta / static_cast<double>(n);
        s += sign * term * kappa[n - 1];
        sign = -sign;
    }
    return s;
}

// --------------------------------------------------------- Gibbs rescale ---

EnergyDistribution gibbs_rescale(const EnergyDistribution& p, const EnergySpectrum& h,
                                 double beta) {
    // shift by the min support energy so the largest term is O(max weight)
    double e_ref = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.size(); ++i)
        if (p.weights[static_cast<std::size_t>(i)] > 0.0)
            e_ref = std::min(e_ref, h.energy(p.offset + i));
    std::vector<double> w(static_cast<std::size_t>(p.size()), 0.0);
    double norm = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        const double wi = p.weights[static_cast<std::size_t>(i)];
        if (wi == 0.0) continue;
        const double v = wi * std::exp(-beta * (h.energy(p.offset + i) - e_ref));
        if (!std::isfinite(v))
            throw Underflow("gibbs_rescale: non-finite term at index " +
                            std::to_string(p.offset + i));
        w[static_cast<std::size_t>(i)] = v;
        norm += v;
    }
    if (!(norm >= 1e-300))
        throw Underflow("gibbs_rescale: normalizer " + std::to_string(norm) +
                        " below 1e-300 after max-energy shift");
    for (double& v : w) v /= norm;
    return EnergyDistribution::from(p.offset, std::move(w));
}

LadderState gibbs_rescale(const LadderState& psi, double beta) {
    double e_ref = std::numeric_limits<double>::infinity();
    for (int i = 0; i < psi.size(); ++i)
        if (psi.amplitudes[static_cast<std::size_t>(i)] != Complex(0.0, 0.0))
            e_ref = std::min(e_ref, psi.spectrum.energy(psi.offset + i));
    std::vector<Complex> a(static_cast<std::size_t>(psi.size()));
    double norm = 0.0;
    for (int i = 0; i < psi.size(); ++i) {
        const Complex ai = psi.amplitudes[static_cast<std::size_t>(i)];
        if (ai == Complex(0.0, 0.0)) continue;
        const double f = std::exp(-0.5 * beta * (psi.spectrum.energy(psi.offset + i) - e_ref));
        if (!std::isfinite(f))
            throw Underflow("gibbs_rescale: non-finite factor at index " +
                            std::to_string(psi.offset + i));
        a[static_cast<std::size_t>(i)] = ai * f;
        norm += std::norm(a[static_cast<std::size_t>(i)]);
    }
    if (!(norm >= 1e-300))
        throw Underflow("gibbs_rescale: normalizer below 1e-300 after max-energy shift");
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& v : a) v *= scale;
    return LadderState::from(psi.offset, std::move(a), psi.spectrum);
}

std::vector<Complex> gibbs_rescale_amplitudes(const std::vector<Complex>& amps,
                                              const std::vector<double>& energies,
                                              double beta) {
    if (amps.size() != energies.size())
        throw std::invalid_argument("gibbs_rescale_amplitudes: size mismatch");
    double e_ref = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (amps[i] != Complex(0.0, 0.0)) e_ref = std::min(e_ref, energies[i]);
    std::vector<Complex> out(amps.size(), Complex(0.0, 0.0));
    double norm = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (amps[i] == Complex(0.0, 0.0)) continue;
        const double f = std::exp(-0.5 * beta * (energies[i] - e_ref));
        if (!std::isfinite(f))
            throw Underflow("gibbs_rescale_amplitudes: non-finite factor");
        out[i] = amps[i] * f;
        norm += std::norm(out[i]);
    }
    if (!(norm >= 1e-300))
        throw Underflow("gibbs_rescale_amplitudes: normalizer below 1e-300");
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& v : out) v *= scale;
    return out;
}

// ------------------------------------------------------- mean coherence ----

double relative_entropy(const EnergyDistribution& a, const EnergyDistribution& b) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        const double ai = a.weights[static_cast<std::size_t>(i)];
        if (ai == 0.0) continue;
        const double bi = b.at(a.offset + i);
        if (bi == 0.0)
            throw Error("relative_entropy: support of a not inside support of b");
        s += ai * std::log(ai / bi);
    }
    return std::max(s, 0.0); // roundoff can produce -1e-17 on equal inputs
}

MeanCoherenceReport mean_coherence(const EnergyDistribution& p, const EnergySpectrum& h,
                                   double beta) {
    MeanCoherenceReport rep;
    rep.beta = beta;
    const std::vector<double> k0 = cumulants(p, h, 2);
    if (beta < 1e-12) {
        // beta -> 0 limit of the closed form
        rep.chi_m = 4.0 * kPi * k0[1];
        rep.beta_m = 0.0;
        rep.kappa2_at_beta_m = k0[1];
        rep.beta_m_roots = {0.0};
        return rep;
    }
    const EnergyDistribution pt = gibbs_rescale(p, h, beta);
    rep.energy_term = beta * (p.mean_energy(h) - pt.mean_energy(h));
    rep.divergence_term = relative_entropy(pt, p);
    double lhs = rep.energy_term - rep.divergence_term; // = (beta^2 / 8 pi) chi_m
    if (lhs < -1e-10)
        throw std::logic_error("mean_coherence: negative coherence measure " +
                               std::to_string(lhs));
    lhs = std::max(lhs, 0.0);
    rep.chi_m = 8.0 * kPi * lhs / (beta * beta);

    // beta_m solves (beta^2/2) kappa_2(p~ at b) = beta <E>_p - Lambda(beta).
    const double target = beta * p.mean_energy(h) - effective_potential(beta, p, h);
    auto residual = [&](double b) {
        const EnergyDistribution q = gibbs_rescale(p, h, b);
        const std::vector<double> k = cumulants(q, h, 2);
        return 0.5 * beta * beta * k[1] - target;
    };
    const double scale = std::max(1.0, std::abs(target));
    if (k0[1] <= 1e-15 || std::abs(target) <= 1e-14 * scale) {
        // sharp-energy state: every b solves the equation; report 0
        rep.beta_m = 0.0;
        rep.kappa2_at_beta_m = k0[1];
        rep.beta_m_roots = {0.0};
        return rep;
    }
    constexpr int kGrid = 512;
    constexpr int kBisectCap = 200;
    std::vector<double> grid_vals(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i)
        grid_vals[static_cast<std::size_t>(i)] = residual(beta * i / kGrid);
    for (int i = 0; i <= kGrid; ++i) {
        const double b = beta * i / kGrid;
        const double f = grid_vals[static_cast<std::size_t>(i)];
        if (std::abs(f) <= 1e-12 * scale) {
            rep.beta_m_roots.push_back(b);
            continue;
        }
        if (i == kGrid) break;
        const double f_next = grid_vals[static_cast<std::size_t>(i) + 1];
        if (f * f_next < 0.0) {
            double lo = b, hi = beta * (i + 1) / kGrid;
            double f_lo = f;
            for (int it = 0; it < kBisectCap; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = residual(mid);
                if (std::abs(f_mid) <= 1e-13 * scale || hi - lo < 1e-15 * beta) {
                    lo = hi = mid;
                    break;
                }
                if (f_lo * f_mid < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            rep.beta_m_roots.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(rep.beta_m_roots.begin(), rep.beta_m_roots.end());
    if (rep.beta_m_roots.empty()) {
        const auto [mn, mx] = std::minmax_element(grid_vals.begin(), grid_vals.end());
        std::ostringstream msg;
        msg << "mean_coherence: no root of the variance equation on [0, " << beta
            << "]; residual range [" << *mn << ", " << *mx << "], target " << target;
        throw RootNotFound(msg.str());
    }
    rep.beta_m = rep.beta_m_roots.front();
    rep.kappa2_at_beta_m = cumulants(gibbs_rescale(p, h, rep.beta_m), h, 2)[1];
    return rep;
}

MeanCoherenceReport mean_coherence(const LadderState& psi, double beta) {
    return mean_coherence(energy_distribution(psi), psi.spectrum, beta);
}

// ------------------------------------------------------- variational form --

VariationalReport variational_potential(const EnergyDistribution& p, const EnergySpectrum& h,
                                        double beta) {
    for (int i = 0; i < p.size(); ++i)
        if (p.weights[static_cast<std::size_t>(i)] == 0.0)
            throw NotFullRank("variational_potential: zero weight at index " +
                              std::to_string(p.offset + i) + " inside the support window");
    const int n = p.size();
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = h.energy(p.offset + i);

    auto objective = [&](const std::vector<double>& s) {
        double v = 0.0;
        for (int i = 0; i < n; ++i) {
            const double si = s[static_cast<std::size_t>(i)];
            if (si > 0.0)
                v += si * (beta * e[static_cast<std::size_t>(i)] +
                           std::log(si / p.weights[static_cast<std::size_t>(i)]));
        }
        return v;
    };
    auto gradient = [&](const std::vector<double>& s) {
        std::vector<double> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double si = std::max(s[static_cast<std::size_t>(i)], 1e-300);
            g[static_cast<std::size_t>(i)] =
                beta * e[static_cast<std::size_t>(i)] +
                std::log(si / p.weights[static_cast<std::size_t>(i)]) + 1.0;
        }
        return g;
    };
    // Euclidean projection onto the probability simplex.
    auto project = [&](std::vector<double> s) {
        std::vector<double> u = s;
        std::sort(u.begin(), u.end(), std::greater<double>());
        double css = 0.0, theta = 0.0;
        int rho = 0;
        for (int i = 0; i < n; ++i) {
            css += u[static_cast<std::size_t>(i)];
            const double t = (css - 1.0) / (i + 1);
            if (u[static_cast<std::size_t>(i)] - t > 0.0) {
                rho = i + 1;
                theta = t;
            }
        }
        (void)rho;
        for (double& v : s) v = std::max(v - theta, 0.0);
        return s;
    };
    // KKT residual: gradient must be constant on the support, and no
    // smaller off it.
    auto stationarity = [&](const std::vector<double>& s) {
        const std::vector<double> g = gradient(s);
        double c = 0.0;
        for (int i = 0; i < n; ++i)
            c += s[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            if (s[static_cast<std::size_t>(i)] > 1e-14)
                r = std::max(r, std::abs(g[static_cast<std::size_t>(i)] - c));
            else
                r = std::max(r, std::max(0.0, c - g[static_cast<std::size_t>(i)]));
        }
        return r;
    };

    const EnergyDistribution init = gibbs_rescale(p, h, beta);
    std::vector<double> sigma(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < init.size(); ++i)
        sigma[static_cast<std::size_t>(init.offset - p.offset + i)] =
            init.weights[static_cast<std::size_t>(i)];

    VariationalReport rep;
    double f = objective(sigma);
    const double tol = 1e-10 * std::max(1.0, std::abs(f));
    int it = 0;
    for (; it < 500; ++it) {
        if (stationarity(sigma) <= tol) break;
        const std::vector<double> g = gradient(sigma);
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            std::vector<double> trial(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                trial[static_cast<std::size_t>(i)] =
                    sigma[static_cast<std::size_t>(i)] - step * g[static_cast<std::size_t>(i)];
            trial = project(std::move(trial));
            const double ft = objective(trial);
            if (ft < f - 1e-18) {
                sigma = std::move(trial);
                f = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    rep.iterations = it;
    rep.value = f;
    rep.stationarity = stationarity(sigma);
    rep.direct_value = effective_potential(beta, p, h);
    rep.argmin = EnergyDistribution::from(p.offset, std::move(sigma));
    return rep;
}

// ------------------------------------------------------ property report ----

PotentialPropertyReport check_potential_properties(const EnergyDistribution& p,
                                                   const EnergySpectrum& h,
                                                   const std::vector<double>& beta_grid) {
    if (beta_grid.size() < 3)
        throw std::invalid_argument("check_potential_properties: grid needs >= 3 points");
    PotentialPropertyReport rep;
    rep.beta_grid = beta_grid;
    rep.lambda_values.reserve(beta_grid.size());
    for (double b : beta_grid) rep.lambda_values.push_back(effective_potential(b, p, h));

    double e_min = std::numeric_limits<double>::infinity();
    double e_max = -std::numeric_limits<double>::infinity();
    double mass_at_min = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p.weights[static_cast<std::size_t>(i)] == 0.0) continue;
        const double e = h.energy(p.offset + i);
        e_min = std::min(e_min, e);
        e_max = std::max(e_max, e);
    }
    for (int i = 0; i < p.size(); ++i) {
        if (p.weights[static_cast<std::size_t>(i)] == 0.0) continue;
        if (std::abs(h.energy(p.offset + i) - e_min) <= h.group_tol)
            mass_at_min += p.weights[static_cast<std::size_t>(i)];
    }
    const double mean = p.mean_energy(h);
    const double kappa2 = p.variance_energy(h);
    const double range = e_max - e_min;

    rep.concave = true;
    for (std::size_t i = 1; i + 1 < beta_grid.size(); ++i) {
        const double second = rep.lambda_values[i - 1] - 2.0 * rep.lambda_values[i] +
                              rep.lambda_values[i + 1];
        if (second > 1e-8) rep.concave = false;
    }
    rep.monotone_on_grid = true;
    for (std::size_t i = 1; i < beta_grid.size(); ++i)
        if (rep.lambda_values[i] < rep.lambda_values[i - 1] - 1e-12)
            rep.monotone_on_grid = false;
    rep.h_nonnegative = e_min >= -1e-12;
    if (rep.h_nonnegative) {
        rep.monotone_iff_nonnegative = rep.monotone_on_grid;
    } else {
        // negative support energy: the slope must eventually turn negative,
        // once beta * (gap above E_min) dominates every log weight ratio
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < p.size(); ++i) {
            if (p.weights[static_cast<std::size_t>(i)] == 0.0) continue;
            const double d = h.energy(p.offset + i) - e_min;
            if (d > h.group_tol) gap = std::min(gap, d);
        }
        const double b_probe = std::isfinite(gap) ? 45.0 / gap : 1.0;
        const double db = 1e-4 * b_probe;
        const double slope = (effective_potential(b_probe + db, p, h) -
                              effective_potential(b_probe, p, h)) / db;
        rep.monotone_iff_nonnegative = slope < 0.0;
    }

    rep.jensen_upper = true;
    rep.hoeffding_lower = true;
    rep.support_bounds = true;
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        const double b = beta_grid[i];
        const double l = rep.lambda_values[i];
        if (l > b * mean + 1e-10) rep.jensen_upper = false;
        if (l < b * mean - b * b * range * range / 8.0 - 1e-10) rep.hoeffding_lower = false;
        const double lo_b = b >= 0.0 ? b * e_min : b * e_max;
        const double hi_b = b >= 0.0 ? b * e_max : b * e_min;
        if (l < lo_b - 1e-10 || l > hi_b + 1e-10) rep.support_bounds = false;
    }

    double b_ref = 0.0;
    for (double b : beta_grid) b_ref = std::max(b_ref, std::abs(b));
    if (b_ref == 0.0) b_ref = 1.0;
    {
        const double s = 1e-4;
        const double v = effective_potential(s * b_ref, p, h) / s;
        rep.high_t_limit = std::abs(v - b_ref * mean) <=
                           1e-3 * std::max(b_ref * b_ref * kappa2, 1e-9);
    }
    {
        const double s = 1e4;
        const double v = effective_potential(s * b_ref, p, h) / s;
        const double bound = -std::log(mass_at_min) / s + 1e-9;
        rep.low_t_limit = std::abs(v - b_ref * e_min) <= bound;
    }

    rep.all_hold = rep.concave && rep.monotone_iff_nonnegative && rep.jensen_upper &&
                   rep.hoeffding_lower && rep.support_bounds && rep.high_t_limit &&
                   rep.low_t_limit;
    return rep;
}

} // namespace cwork
