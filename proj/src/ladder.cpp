#include "cwork/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cwork {

// ------------------------------------------------------------ spectrum -----

EnergySpectrum EnergySpectrum::ladder(int lo, int hi, double spacing, double shift) {
    if (hi < lo) throw std::invalid_argument("EnergySpectrum::ladder: hi < lo");
    EnergySpectrum h;
    h.lo = lo;
    h.levels.resize(static_cast<std::size_t>(hi - lo + 1));
    for (int n = lo; n <= hi; ++n)
        h.levels[static_cast<std::size_t>(n - lo)] = spacing * n + shift;
    return h;
}

EnergySpectrum EnergySpectrum::oscillator(int n_levels, double hnu, double zero_point) {
    if (n_levels < 1) throw std::invalid_argument("EnergySpectrum::oscillator: n_levels < 1");
    EnergySpectrum h;
    h.lo = 0;
    h.levels.resize(static_cast<std::size_t>(n_levels));
    for (int n = 0; n < n_levels; ++n)
        h.levels[static_cast<std::size_t>(n)] = hnu * n + zero_point;
    return h;
}

double EnergySpectrum::energy(int index) const {
    if (is_unit()) return static_cast<double>(index);
    if (index < lo || index > hi())
        throw std::out_of_range("EnergySpectrum: index " + std::to_string(index) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi()) + "]");
    return levels[static_cast<std::size_t>(index - lo)];
}

std::vector<std::vector<int>> EnergySpectrum::degenerate_groups(int window_lo,
                                                                int window_hi) const {
    std::vector<int> idx;
    for (int n = window_lo; n <= window_hi; ++n)
        if (contains(n)) idx.push_back(n);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return energy(a) < energy(b); });
    std::vector<std::vector<int>> groups;
    for (int n : idx) {
        if (!groups.empty() && std::abs(energy(n) - energy(groups.back().front())) <= group_tol)
            groups.back().push_back(n);
        else
            groups.push_back({n});
    }
    return groups;
}

// ----------------------------------------------------------- distribution --

EnergyDistribution EnergyDistribution::from(int offset, std::vector<double> weights) {
    if (weights.empty())
        throw Error("EnergyDistribution: weights must be non-empty");
    double total = 0.0;
    for (double& w : weights) {
        if (!std::isfinite(w) || w < -kWeightFloor)
            throw Error("EnergyDistribution: weights must be finite and >= 0");
        if (w < kWeightFloor) w = 0.0;
        total += w;
    }
    if (std::abs(total - 1.0) > kNormTol)
        throw Error("EnergyDistribution: weights sum to " +
                                    std::to_string(total) + ", expected 1");
    std::size_t first = 0;
    while (first + 1 < weights.size() && weights[first] == 0.0) ++first;
    std::size_t last = weights.size();
    while (last > first + 1 && weights[last - 1] == 0.0) --last;
    EnergyDistribution p;
    p.offset = offset + static_cast<int>(first);
    p.weights.assign(weights.begin() + static_cast<std::ptrdiff_t>(first),
                     weights.begin() + static_cast<std::ptrdiff_t>(last));
    for (double& w : p.weights) w /= total;
    return p;
}

EnergyDistribution EnergyDistribution::uniform(const std::vector<int>& indices) {
    if (indices.empty())
        throw Error("EnergyDistribution::uniform: no indices");
    const auto [mn, mx] = std::minmax_element(indices.begin(), indices.end());
    std::vector<double> w(static_cast<std::size_t>(*mx - *mn + 1), 0.0);
    for (int n : indices) w[static_cast<std::size_t>(n - *mn)] += 1.0 / indices.size();
    return from(*mn, std::move(w));
}

double EnergyDistribution::at(int index) const {
    if (index < offset || index > support_hi()) return 0.0;
    return weights[static_cast<std::size_t>(index - offset)];
}

double EnergyDistribution::max_weight() const {
    return *std::max_element(weights.begin(), weights.end());
}

double EnergyDistribution::total() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double EnergyDistribution::mean() const {
    double m = 0.0;
    for (int i = 0; i < size(); ++i) m += weights[static_cast<std::size_t>(i)] * (offset + i);
    return m;
}

double EnergyDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (int i = 0; i < size(); ++i) {
        const double d = (offset + i) - m;
        v += weights[static_cast<std::size_t>(i)] * d * d;
    }
    return v;
}

double EnergyDistribution::mean_energy(const EnergySpectrum& h) const {
    double m = 0.0;
    for (int i = 0; i < size(); ++i)
        m += weights[static_cast<std::size_t>(i)] * h.energy(offset + i);
    return m;
}

double EnergyDistribution::variance_energy(const EnergySpectrum& h) const {
    const double m = mean_energy(h);
    double v = 0.0;
    for (int i = 0; i < size(); ++i) {
        const double d = h.energy(offset + i) - m;
        v += weights[static_cast<std::size_t>(i)] * d * d;
    }
    return v;
}

// ------------------------------------------------------------- state -------

LadderState LadderState::from(int offset, std::vector<Complex> amplitudes,
                              EnergySpectrum spectrum) {
    if (amplitudes.empty())
        throw Error("LadderState: amplitudes must be non-empty");
    double total = 0.0;
    for (Complex& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw Error("LadderState: amplitudes must be finite");
        if (std::norm(a) < kWeightFloor) a = Complex(0.0, 0.0);
        total += std::norm(a);
    }
    if (std::abs(total - 1.0) > kNormTol)
        throw Error("LadderState: squared amplitudes sum to " +
                                    std::to_string(total) + ", expected 1");
    std::size_t first = 0;
    while (first + 1 < amplitudes.size() && amplitudes[first] == Complex(0.0, 0.0)) ++first;
    std::size_t last = amplitudes.size();
    while (last > first + 1 && amplitudes[last - 1] == Complex(0.0, 0.0)) --last;
    LadderState psi;
    psi.offset = offset + static_cast<int>(first);
    psi.amplitudes.assign(amplitudes.begin() + static_cast<std::ptrdiff_t>(first),
                          amplitudes.begin() + static_cast<std::ptrdiff_t>(last));
    const double scale = 1.0 / std::sqrt(total);
    for (Complex& a : psi.amplitudes) a *= scale;
    psi.spectrum = std::move(spectrum);
    if (!psi.spectrum.is_unit() &&
        (!psi.spectrum.contains(psi.support_lo()) || !psi.spectrum.contains(psi.support_hi())))
        throw Error("LadderState: support outside spectrum window");
    return psi;
}

LadderState LadderState::basis(int index, EnergySpectrum spectrum) {
    return from(index, {Complex(1.0, 0.0)}, std::move(spectrum));
}

Complex LadderState::at(int index) const {
    if (index < offset || index > support_hi()) return Complex(0.0, 0.0);
    return amplitudes[static_cast<std::size_t>(index - offset)];
}

double LadderState::norm_sq() const {
    double s = 0.0;
    for (const Complex& a : amplitudes) s += std::norm(a);
    return s;
}

double LadderState::mean_energy() const {
    double m = 0.0;
    for (int i = 0; i < size(); ++i)
        m += std::norm(amplitudes[static_cast<std::size_t>(i)]) * spectrum.energy(offset + i);
    return m;
}

LadderState LadderState::conjugate() const {
    LadderState out = *this;
    for (Complex& a : out.amplitudes) a = std::conj(a);
    return out;
}

LadderState LadderState::evolved(double t) const {
    LadderState out = *this;
    for (int i = 0; i < size(); ++i) {
        const double e = spectrum.energy(offset + i);
        out.amplitudes[static_cast<std::size_t>(i)] *= std::exp(Complex(0.0, -e * t));
    }
    return out;
}

double fidelity(const LadderState& a, const LadderState& b) {
    const int lo = std::max(a.support_lo(), b.support_lo());
    const int hi = std::min(a.support_hi(), b.support_hi());
    Complex overlap(0.0, 0.0);
    for (int n = lo; n <= hi; ++n) overlap += std::conj(a.at(n)) * b.at(n);
    return std::norm(overlap);
}

// ------------------------------------------------------- coherent states ---

LadderState make_coherent_state(const CoherentLadderParams& params, int truncation,
                                double* discarded_tail) {
    if (truncation < 1)
        throw std::invalid_argument("make_coherent_state: truncation < 1");
    if (params.phases.size() > static_cast<std::size_t>(truncation))
        throw Error("make_coherent_state: more phases than window positions");
    const double lambda = std::norm(params.alpha);
    std::vector<Complex> amps(static_cast<std::size_t>(truncation));
    // log-space magnitudes: log|a_n| = -lambda/2 + n log|alpha| - log(n!)/2
    double log_fact = 0.0;
    double mass = 0.0;
    const double log_abs_alpha = lambda > 0.0 ? 0.5 * std::log(lambda) : 0.0;
    const double arg_alpha = std::arg(params.alpha);
    for (int n = 0; n < truncation; ++n) {
        if (n > 0) log_fact += std::log(static_cast<double>(n));
        double phase = arg_alpha * n;
        if (static_cast<std::size_t>(n) < params.phases.size())
            phase += params.phases[static_cast<std::size_t>(n)]; // missing tail = zero
        double mag;
        if (lambda == 0.0) {
            mag = (n == 0) ? 1.0 : 0.0;
        } else {
            mag = std::exp(-0.5 * lambda + n * log_abs_alpha - 0.5 * log_fact);
        }
        amps[static_cast<std::size_t>(n)] = std::polar(mag, phase);
        mass += mag * mag;
    }
    const double tail = 1.0 - mass;
    if (discarded_tail) *discarded_tail = tail;
    if (tail >= kTailTol)
        throw TruncationTooSmall("make_coherent_state: tail mass " + std::to_string(tail) +
                                 " at truncation " + std::to_string(truncation));
    return LadderState::from(params.shift_k, std::move(amps));
}

// ------------------------------------------------------------ operations ---

EnergyDistribution energy_distribution(const LadderState& psi) {
    std::vector<double> w(static_cast<std::size_t>(psi.size()));
    for (int i = 0; i < psi.size(); ++i)
        w[static_cast<std::size_t>(i)] = std::norm(psi.amplitudes[static_cast<std::size_t>(i)]);
    return EnergyDistribution::from(psi.offset, std::move(w));
}

EnergyDistribution convolve(const EnergyDistribution& q, const EnergyDistribution& r) {
    std::vector<double> w(static_cast<std::size_t>(q.size() + r.size() - 1), 0.0);
    for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < r.size(); ++j)
            w[static_cast<std::size_t>(i + j)] +=
                q.weights[static_cast<std::size_t>(i)] * r.weights[static_cast<std::size_t>(j)];
    return EnergyDistribution::from(q.offset + r.offset, std::move(w));
}

EnergyDistribution convolve_power(const EnergyDistribution& p, int n) {
    if (n < 1) throw std::invalid_argument("convolve_power: n < 1");
    EnergyDistribution out = p;
    for (int i = 1; i < n; ++i) out = convolve(out, p);
    return out;
}

DisorderFunctional DisorderFunctional::renyi(double alpha) {
    if (!(alpha > 0.0))
        throw InvalidRenyiOrder("DisorderFunctional::renyi: order " + std::to_string(alpha) +
                                " must be > 0");
    return {Kind::Renyi, alpha};
}

double disorder(const EnergyDistribution& p, const DisorderFunctional& f) {
    switch (f.kind) {
    case DisorderFunctional::Kind::MaxWeightNegated:
        return -p.max_weight();
    case DisorderFunctional::Kind::Renyi: {
        if (!(f.alpha > 0.0))
            throw InvalidRenyiOrder("disorder: Renyi order must be > 0");
        if (std::abs(f.alpha - 1.0) < 1e-12) break; // alpha -> 1 limit is Shannon
        double s = 0.0;
        for (double w : p.weights)
            if (w > 0.0) s += std::pow(w, f.alpha);
        return std::log(s) / (1.0 - f.alpha);
    }
    case DisorderFunctional::Kind::Shannon:
        break;
    }
    double h = 0.0;
    for (double w : p.weights)
        if (w > 0.0) h -= w * std::log(w);
    return h;
}

namespace {

std::vector<double> descending_partial_sums(const EnergyDistribution& p, std::size_t len) {
    std::vector<double> w = p.weights;
    std::sort(w.begin(), w.end(), std::greater<double>());
    w.resize(len, 0.0);
    std::partial_sum(w.begin(), w.end(), w.begin());
    return w;
}

} // namespace

bool majorizes(const EnergyDistribution& q, const EnergyDistribution& p) {
    const std::size_t len = std::max(q.weights.size(), p.weights.size());
    const std::vector<double> qs = descending_partial_sums(q, len);
    const std::vector<double> ps = descending_partial_sums(p, len);
    for (std::size_t k = 0; k < len; ++k)
        if (qs[k] < ps[k] - 1e-12) return false;
    return true;
}

Complex characteristic_function(const EnergyDistribution& p, double t) {
    Complex phi(0.0, 0.0);
    for (int i = 0; i < p.size(); ++i)
        phi += p.weights[static_cast<std::size_t>(i)] *
               std::exp(Complex(0.0, t * (p.offset + i)));
    return phi;
}

} // namespace cwork
