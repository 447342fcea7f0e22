#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cwork {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Unitary that is block diagonal over groups of basis elements sharing the
// same conserved quantity (here: total energy within a grouping tolerance).
// Basis elements outside every group are treated as identity.
struct BlockUnitary {
    int dim = 0;
    std::vector<double> basis_energies;        // per basis element
    std::vector<std::vector<int>> groups;      // basis indices per block
    std::vector<Matrix> blocks;                // unitary on each group

    Vector apply(const Vector& in) const;
    Vector apply_adjoint(const Vector& in) const;
    Matrix dense() const;

    // max over blocks of || B B^dag - 1 ||_inf
    double unitarity_residual() const;
    // || V H - H V ||_inf with H = diag(basis_energies), evaluated blockwise
    double commutation_residual() const;
    // max over blocks of || B - B^T ||_inf (dense index space)
    double symmetry_residual() const;
};

// Groups basis elements by energy within group_tol (ascending energy).
std::vector<std::vector<int>> group_by_energy(const std::vector<double>& energies,
                                              double group_tol);

// Unitary completion: given a prescribed unit-norm first image `target` for
// basis position `source` inside a block of dimension d, extends to a full
// unitary by Gram-Schmidt over the standard basis in fixed order. The result
// U satisfies U e_source = target and is deterministic.
Matrix complete_unitary(int d, int source, const Vector& target);

// exp(i A) for real symmetric A: complex symmetric unitary.
Matrix exp_i_symmetric(const Eigen::MatrixXd& a);

// exp(K) for anti-Hermitian K (checked): unitary.
Matrix exp_antihermitian(const Matrix& k);

} // namespace cwork
