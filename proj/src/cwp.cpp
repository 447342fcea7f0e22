#include "cwork/cwp.hpp"

#include <algorithm>
#include <cmath>

#include "cwork/deconvolve.hpp"
#include "cwork/nnls.hpp"

namespace cwork {

namespace {

// sup norm of q * r - p over the union window
double convolution_residual(const EnergyDistribution& p, const EnergyDistribution& q,
                            const EnergyDistribution& r) {
    const EnergyDistribution conv = convolve(q, r);
    const int lo = std::min(p.support_lo(), conv.support_lo());
    const int hi = std::max(p.support_hi(), conv.support_hi());
    double res = 0.0;
    for (int n = lo; n <= hi; ++n) res = std::max(res, std::abs(p.at(n) - conv.at(n)));
    return res;
}

LadderState state_from_vector(int offset, const Vector& v) {
    std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) amps[static_cast<std::size_t>(i)] = v[i];
    return LadderState::from(offset, std::move(amps));
}

// Dominant Schmidt pair of the coefficient matrix m[s, a], phase fixed by
// the largest system amplitude.
struct SchmidtFactors {
    Vector system;
    Vector auxiliary;
    double weight = 0.0; // leading singular value squared
};

SchmidtFactors dominant_factors(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtFactors f;
    const double s1 = svd.singularValues()[0];
    f.weight = s1 * s1;
    Vector u = svd.matrixU().col(0);
    Vector v = svd.matrixV().col(0).conjugate(); // m ~ s1 * u v^T
    Eigen::Index imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    const Complex phase = u[imax] / std::abs(u[imax]);
    f.system = u / phase;
    f.auxiliary = v * phase;
    return f;
}

} // namespace

EnergyConservingUnitary build_cwp_unitary(const EnergyDistribution& p,
                                          const EnergyDistribution& q,
                                          const EnergyDistribution& r,
                                          const std::vector<double>& phases_q,
                                          const std::vector<double>& phases_r,
                                          const std::optional<CwpWindows>& windows) {
    if (!phases_q.empty() && phases_q.size() != static_cast<std::size_t>(q.size()))
        throw std::invalid_argument("build_cwp_unitary: phases_q size mismatch");
    if (!phases_r.empty() && phases_r.size() != static_cast<std::size_t>(r.size()))
        throw std::invalid_argument("build_cwp_unitary: phases_r size mismatch");
    const double mismatch = convolution_residual(p, q, r);
    if (mismatch > 1e-10)
        throw ConvolutionMismatch("build_cwp_unitary: q * r misses p by " +
                                  std::to_string(mismatch));

    CwpWindows w;
    if (windows) {
        w = *windows;
        if (w.s_lo > std::min(p.support_lo(), q.support_lo()) ||
            w.s_hi < std::max(p.support_hi(), q.support_hi()) ||
            w.a_lo > std::min(r.support_lo(), 0) || w.a_hi < std::max(r.support_hi(), 0))
            throw WindowOverflow("build_cwp_unitary: supports exceed the requested windows");
    } else {
        w.s_lo = std::min(p.support_lo(), q.support_lo());
        w.s_hi = std::max(p.support_hi(), q.support_hi());
        w.a_lo = std::min(r.support_lo(), 0);
        w.a_hi = std::max(r.support_hi(), 0);
    }

    EnergyConservingUnitary v;
    v.windows = w;
    const int dim_s = v.dim_s();
    const int dim_a = v.dim_a();
    v.u.dim = dim_s * dim_a;
    v.u.basis_energies.resize(static_cast<std::size_t>(v.u.dim));
    for (int s = w.s_lo; s <= w.s_hi; ++s)
        for (int a = w.a_lo; a <= w.a_hi; ++a)
            v.u.basis_energies[static_cast<std::size_t>(v.flat(s, a))] =
                static_cast<double>(s + a);

    for (int n = p.support_lo(); n <= p.support_hi(); ++n) {
        const double pn = p.at(n);
        if (pn == 0.0) continue;
        // block over (s, a) with s + a = n, ascending in s
        std::vector<int> idx;
        int source = -1;
        for (int s = std::max(w.s_lo, n - w.a_hi); s <= std::min(w.s_hi, n - w.a_lo); ++s) {
            const int a = n - s;
            if (s == n && a == 0) source = static_cast<int>(idx.size());
            idx.push_back(v.flat(s, a));
        }
        if (source < 0)
            throw WindowOverflow("build_cwp_unitary: (n, 0) outside windows for n = " +
                                 std::to_string(n));
        const int d = static_cast<int>(idx.size());
        Vector target = Vector::Zero(d);
        for (int pos = 0; pos < d; ++pos) {
            const int s = w.s_lo + idx[static_cast<std::size_t>(pos)] / dim_a;
            const int a = w.a_lo + idx[static_cast<std::size_t>(pos)] % dim_a;
            const double qj = q.at(s);
            const double rk = r.at(a);
            if (qj == 0.0 || rk == 0.0) continue;
            double phase = 0.0;
            if (!phases_q.empty()) phase += phases_q[static_cast<std::size_t>(s - q.offset)];
            if (!phases_r.empty()) phase += phases_r[static_cast<std::size_t>(a - r.offset)];
            target[pos] = std::polar(std::sqrt(qj * rk / pn), phase);
        }
        target /= target.norm(); // kills the <=1e-10 convolution slack
        v.u.groups.push_back(std::move(idx));
        v.u.blocks.push_back(complete_unitary(d, source, target));
    }
    return v;
}

CwpRecord apply_cwp(const EnergyConservingUnitary& v, const LadderState& input) {
    const CwpWindows& w = v.windows;
    if (input.support_lo() < w.s_lo || input.support_hi() > w.s_hi)
        throw WindowOverflow("apply_cwp: input support outside the system window");
    if (w.a_lo > 0 || w.a_hi < 0)
        throw WindowOverflow("apply_cwp: auxiliary window does not contain level 0");
    Vector in = Vector::Zero(v.u.dim);
    for (int s = input.support_lo(); s <= input.support_hi(); ++s)
        in[v.flat(s, 0)] = input.at(s);
    const Vector out = v.u.apply(in);

    Matrix m(v.dim_s(), v.dim_a());
    for (int s = w.s_lo; s <= w.s_hi; ++s)
        for (int a = w.a_lo; a <= w.a_hi; ++a)
            m(s - w.s_lo, a - w.a_lo) = out[v.flat(s, a)];
    const SchmidtFactors f = dominant_factors(m);
    if (f.weight < 1.0 - 1e-8)
        throw NotAProcess("apply_cwp: leading Schmidt weight " + std::to_string(f.weight) +
                          " below 1 - 1e-8, output is not a product state");
    CwpRecord record;
    record.input = input;
    record.output = state_from_vector(w.s_lo, f.system);
    record.work = state_from_vector(w.a_lo, f.auxiliary);
    record.product_fidelity = f.weight;
    record.unitarity_residual = v.unitarity_residual();
    record.commutation_residual = v.commutation_residual();
    return record;
}

EnergyDistribution infer_work_distribution(const EnergyDistribution& input,
                                           const EnergyDistribution& output) {
    const int r_lo = input.support_lo() - output.support_lo();
    const int r_hi = input.support_hi() - output.support_hi();
    if (r_hi < r_lo)
        throw NoValidProcess("infer_work_distribution: no admissible work window");
    const int len_r = r_hi - r_lo + 1;
    // input window re-expressed over output.offset + r_lo .. output hi + r_hi
    const int n = output.size() + len_r - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, len_r);
    for (int j = 0; j < len_r; ++j)
        for (int i = 0; i < output.size(); ++i)
            c(i + j, j) = output.weights[static_cast<std::size_t>(i)];
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) b[k] = input.at(output.support_lo() + r_lo + k);
    const Eigen::VectorXd r = nnls(c, b);
    const double residual = (c * r - b).cwiseAbs().maxCoeff();
    if (residual > 1e-10 || r.sum() <= 0.0)
        throw NoValidProcess("infer_work_distribution: best nonnegative fit misses by " +
                             std::to_string(residual));
    std::vector<double> rw(r.data(), r.data() + r.size());
    const double total = r.sum();
    for (double& x : rw) x /= total;
    return EnergyDistribution::from(r_lo, std::move(rw));
}

bool is_reversible(const CwpRecord& record) {
    const EnergyDistribution wd = energy_distribution(record.work);
    return wd.max_weight() > kTrivialFactor && wd.variance() <= 1e-12;
}

CwpRecord beam_splitter_process(Complex alpha, double theta, int truncation) {
    // the tail gate also validates the truncation
    const LadderState in = make_coherent_state({alpha, 0, {}}, truncation);

    EnergyConservingUnitary v;
    v.windows = {0, truncation - 1, 0, truncation - 1};
    v.u.dim = truncation * truncation;
    v.u.basis_energies.resize(static_cast<std::size_t>(v.u.dim));
    for (int na = 0; na < truncation; ++na)
        for (int nb = 0; nb < truncation; ++nb)
            v.u.basis_energies[static_cast<std::size_t>(v.flat(na, nb))] =
                static_cast<double>(na + nb);
    // number-conserving rotation blocks; the generator sign is fixed so the
    // vacuum-fed mode comes out as |-alpha sin theta>
    for (int m = 0; m <= 2 * (truncation - 1); ++m) {
        const int j_lo = std::max(0, m - truncation + 1);
        const int j_hi = std::min(m, truncation - 1);
        const int d = j_hi - j_lo + 1;
        if (d < 2) continue;
        Matrix k = Matrix::Zero(d, d);
        for (int j = j_lo; j <= j_hi; ++j) {
            // a b^dag couples (na, nb) <-> (na - 1, nb + 1), factor sqrt(na (nb + 1))
            if (j - 1 >= j_lo) {
                const double amp = std::sqrt(static_cast<double>(j) *
                                             static_cast<double>(m - j + 1));
                k(j - 1 - j_lo, j - j_lo) -= theta * amp;
                k(j - j_lo, j - 1 - j_lo) += theta * amp;
            }
        }
        std::vector<int> idx;
        idx.reserve(static_cast<std::size_t>(d));
        for (int j = j_lo; j <= j_hi; ++j) idx.push_back(v.flat(j, m - j));
        v.u.groups.push_back(std::move(idx));
        v.u.blocks.push_back(exp_antihermitian(k));
    }
    return apply_cwp(v, in);
}

DisorderMonotoneReport disorder_monotone_check(const CwpRecord& record,
                                               const std::vector<DisorderFunctional>& fs) {
    DisorderMonotoneReport rep;
    const EnergyDistribution p = energy_distribution(record.input);
    const EnergyDistribution q = energy_distribution(record.output);
    const EnergyDistribution r = energy_distribution(record.work);
    rep.majorization_output = majorizes(q, p);
    rep.majorization_work = majorizes(r, p);
    rep.disorder_never_increases = true;
    for (const DisorderFunctional& f : fs) {
        const double dp = disorder(p, f);
        const double dq = disorder(q, f);
        const double dr = disorder(r, f);
        rep.disorder_input.push_back(dp);
        rep.disorder_output.push_back(dq);
        rep.disorder_work.push_back(dr);
        if (std::max(dq, dr) > dp + 1e-12) rep.disorder_never_increases = false;
    }
    rep.all_hold = rep.majorization_output && rep.majorization_work &&
                   rep.disorder_never_increases;
    return rep;
}

} // namespace cwork
