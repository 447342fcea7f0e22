#include <doctest.h>

#include <Eigen/Dense>

#include "cwork/nnls.hpp"
#include "cwork/rng.hpp"

using cwork::nnls;
using cwork::Rng;

TEST_CASE("recovers an interior solution exactly") {
    Eigen::MatrixXd a(3, 2);
    a << 1, 0, 0, 1, 1, 1;
    Eigen::VectorXd x_true(2);
    x_true << 0.3, 0.7;
    const Eigen::VectorXd b = a * x_true;
    const Eigen::VectorXd x = nnls(a, b);
    CHECK((x - x_true).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("clamps a solution that unconstrained least squares puts negative") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 1, 1.0001;
    Eigen::VectorXd b(2);
    b << 1, 0.5;
    const Eigen::VectorXd x = nnls(a, b);
    CHECK(x.minCoeff() >= 0.0);
    // optimality: gradient of the active (zero) coordinates points outward
    const Eigen::VectorXd g = a.transpose() * (b - a * x);
    for (int i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            CHECK(g[i] <= 1e-10);
        } else {
            CHECK(std::abs(g[i]) < 1e-10);
        }
    }
}

TEST_CASE("random nonnegative systems satisfy the optimality conditions") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 4 + rng.uniform_int(0, 4);
        const int n = 2 + rng.uniform_int(0, 3);
        Eigen::MatrixXd a(m, n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                a(i, j) = rng.normal();
            }
        }
        Eigen::VectorXd b(m);
        for (int i = 0; i < m; ++i) {
            b[i] = rng.normal();
        }
        const Eigen::VectorXd x = nnls(a, b);
        REQUIRE(x.minCoeff() >= 0.0);
        const Eigen::VectorXd g = a.transpose() * (b - a * x);
        for (int j = 0; j < n; ++j) {
            if (x[j] > 0.0) {
                CHECK(std::abs(g[j]) < 1e-8);
            } else {
                CHECK(g[j] <= 1e-8);
            }
        }
    }
}

TEST_CASE("exact recovery through a convolution design matrix") {
    // columns shift the kernel {0.5, 0.5}; solution is the other factor
    Eigen::MatrixXd a(4, 3);
    a.setZero();
    for (int j = 0; j < 3; ++j) {
        a(j, j) = 0.5;
        a(j + 1, j) = 0.5;
    }
    Eigen::VectorXd x_true(3);
    x_true << 0.25, 0.5, 0.25;
    const Eigen::VectorXd x = nnls(a, a * x_true);
    CHECK((x - x_true).lpNorm<Eigen::Infinity>() < 1e-12);
}
