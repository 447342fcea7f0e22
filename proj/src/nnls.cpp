#include "cwork/nnls.hpp"

#include <limits>
#include <vector>

namespace cwork {

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iter,
                     double tol) {
    const int n = static_cast<int>(a.cols());
    if (max_iter <= 0) max_iter = 3 * n + 30;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);

    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        z.setZero(n);
        if (idx.empty()) return;
        Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k)
            ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
        const Eigen::VectorXd zp =
            ap.colPivHouseholderQr().solve(b);
        for (std::size_t k = 0; k < idx.size(); ++k)
            z[idx[k]] = zp[static_cast<Eigen::Index>(k)];
    };

    for (int outer = 0; outer < max_iter; ++outer) {
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        int best = -1;
        double best_w = tol;
        for (int j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        Eigen::VectorXd z;
        for (int inner = 0; inner < max_iter; ++inner) {
            solve_passive(z);
            double alpha = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
                    const double step = x[j] / (x[j] - z[j]);
                    alpha = std::min(alpha, step);
                }
            }
            if (!std::isfinite(alpha)) break; // all passive components positive
            x += alpha * (z - x);
            for (int j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x[j] = 0.0;
                }
        }
        x = z;
        for (int j = 0; j < n; ++j)
            if (x[j] < 0.0) x[j] = 0.0;
    }
    return x;
}

} // namespace cwork
