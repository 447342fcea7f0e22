#include "cwork/block_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cwork {

Vector BlockUnitary::apply(const Vector& in) const {
    if (in.size() != dim) throw std::invalid_argument("BlockUnitary::apply: dimension mismatch");
    Vector out = in;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& idx = groups[g];
        Vector sub(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            sub[static_cast<Eigen::Index>(i)] = in[idx[i]];
        sub = blocks[g] * sub;
        for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = sub[static_cast<Eigen::Index>(i)];
    }
    return out;
}

Vector BlockUnitary::apply_adjoint(const Vector& in) const {
    if (in.size() != dim)
        throw std::invalid_argument("BlockUnitary::apply_adjoint: dimension mismatch");
    Vector out = in;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& idx = groups[g];
        Vector sub(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            sub[static_cast<Eigen::Index>(i)] = in[idx[i]];
        sub = blocks[g].adjoint() * sub;
        for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = sub[static_cast<Eigen::Index>(i)];
    }
    return out;
}

Matrix BlockUnitary::dense() const {
    Matrix v = Matrix::Identity(dim, dim);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& idx = groups[g];
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                v(idx[i], idx[j]) = blocks[g](static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(j));
    }
    return v;
}

double BlockUnitary::unitarity_residual() const {
    double r = 0.0;
    for (const Matrix& b : blocks) {
        const Matrix d = b * b.adjoint() - Matrix::Identity(b.rows(), b.cols());
        r = std::max(r, d.cwiseAbs().maxCoeff());
    }
    return r;
}

double BlockUnitary::commutation_residual() const {
    // within a block, |V_ij| weighted by the energy mismatch of its endpoints
    double r = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& idx = groups[g];
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) {
                const double de = basis_energies[static_cast<std::size_t>(idx[i])] -
                                  basis_energies[static_cast<std::size_t>(idx[j])];
                r = std::max(r, std::abs(de) *
                                    std::abs(blocks[g](static_cast<Eigen::Index>(i),
                                                       static_cast<Eigen::Index>(j))));
            }
    }
    return r;
}

double BlockUnitary::symmetry_residual() const {
    double r = 0.0;
    for (const Matrix& b : blocks) {
        const Matrix d = b - b.transpose();
        r = std::max(r, d.cwiseAbs().maxCoeff());
    }
    return r;
}

std::vector<std::vector<int>> group_by_energy(const std::vector<double>& energies,
                                              double group_tol) {
    std::vector<int> order(energies.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return energies[static_cast<std::size_t>(a)] <
                                                 energies[static_cast<std::size_t>(b)]; });
    std::vector<std::vector<int>> groups;
    for (int i : order) {
        if (!groups.empty() &&
            std::abs(energies[static_cast<std::size_t>(i)] -
                     energies[static_cast<std::size_t>(groups.back().front())]) <= group_tol)
            groups.back().push_back(i);
        else
            groups.push_back({i});
    }
    return groups;
}

Matrix complete_unitary(int d, int source, const Vector& target) {
    if (target.size() != d)
        throw std::invalid_argument("complete_unitary: target dimension mismatch");
    if (std::abs(target.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("complete_unitary: target not unit norm");
    std::vector<Vector> columns;
    columns.reserve(static_cast<std::size_t>(d));
    columns.push_back(target);
    for (int cand = 0; cand < d && static_cast<int>(columns.size()) < d; ++cand) {
        Vector v = Vector::Zero(d);
        v[cand] = 1.0;
        for (const Vector& c : columns) v -= c.dot(v) * c;
        const double n = v.norm();
        if (n > 1e-8) {
            // second pass stabilizes near-parallel candidates
            for (const Vector& c : columns) v -= c.dot(v) * c;
            columns.push_back(v / v.norm());
        }
    }
    if (static_cast<int>(columns.size()) != d)
        throw std::logic_error("complete_unitary: completion failed");
    // place the prescribed image on the source column, the rest in order
    Matrix u(d, d);
    u.col(source) = columns.front();
    int next = 1;
    for (int j = 0; j < d; ++j) {
        if (j == source) continue;
        u.col(j) = columns[static_cast<std::size_t>(next++)];
    }
    return u;
}

Matrix exp_i_symmetric(const Eigen::MatrixXd& a) {
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("exp_i_symmetric: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::MatrixXd& q = es.eigenvectors();
    Matrix phase = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        phase(i, i) = std::exp(std::complex<double>(0.0, es.eigenvalues()[i]));
    // Q e^{iD} Q^T is symmetric and unitary
    return q.cast<std::complex<double>>() * phase * q.transpose().cast<std::complex<double>>();
}

Matrix exp_antihermitian(const Matrix& k) {
    if ((k + k.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("exp_antihermitian: matrix not anti-Hermitian");
    const Matrix h = std::complex<double>(0.0, 1.0) * k; // Hermitian
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Matrix phase = Matrix::Zero(k.rows(), k.cols());
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        phase(i, i) = std::exp(std::complex<double>(0.0, -es.eigenvalues()[i]));
    return es.eigenvectors() * phase * es.eigenvectors().adjoint();
}

} // namespace cwork
