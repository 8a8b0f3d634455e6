#include "gausspetz/williamson.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gausspetz/state.hpp"

namespace gausspetz {

Matrix WilliamsonDecomposition::diagonal() const {
    const int n = static_cast<int>(nu.size());
    Vector d(2 * n);
    d << nu, nu;
    return d.asDiagonal();
}

Matrix WilliamsonDecomposition::reconstruct() const {
    return S * diagonal() * S.transpose();
}

Matrix symplectic_inverse(const Matrix& s) {
    const int n = static_cast<int>(s.rows()) / 2;
    const Matrix omega = symplectic_form(n);
    return omega * s.transpose() * omega.transpose();
}

WilliamsonDecomposition williamson(const Matrix& cov) {
    const int dim = static_cast<int>(cov.rows());
    if (dim % 2 != 0 || cov.cols() != dim || dim == 0) {
        throw std::invalid_argument("williamson: matrix must be 2n x 2n");
    }
    const int n = dim / 2;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (cov + cov.transpose()));
    if (eig.eigenvalues().minCoeff() <= 0.0) {
        throw std::domain_error(
            "williamson: matrix is not positive definite (min eigenvalue " +
            std::to_string(eig.eigenvalues().minCoeff()) + ")");
    }
    const Matrix root = eig.operatorSqrt();

    const Matrix omega = symplectic_form(n);
    Matrix skew = root * omega * root;
    skew = 0.5 * (skew - skew.transpose().eval());

    Eigen::RealSchur<Matrix> schur(skew);
    const Matrix& t = schur.matrixT();
    const Matrix& q = schur.matrixU();

    // The Schur form of an invertible skew-symmetric matrix is block
    // diagonal with 2x2 blocks [[0, b], [-b, 0]]. Normalize each block so
    // that b > 0: columns (k, k+1) of Q then play the (x, p) roles of one
    // mode of the normal form.
    struct ModePair {
        double nu;
        int x_col;
        int p_col;
    };
    std::vector<ModePair> pairs;
    pairs.reserve(n);
    for (int k = 0; k + 1 < dim; k += 2) {
        const double b = t(k, k + 1);
        if (std::abs(b) <= 0.0) {
            throw std::domain_error(
                "williamson: degenerate Schur block, matrix is singular");
        }
        if (b > 0) {
            pairs.push_back({b, k, k + 1});
        } else {
            pairs.push_back({-b, k + 1, k});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const ModePair& a, const ModePair& b) {
                         return a.nu > b.nu;
                     });

    Matrix ordered(dim, dim);
    Vector nu(n);
    for (int j = 0; j < n; ++j) {
        nu(j) = pairs[j].nu;
        ordered.col(j) = q.col(pairs[j].x_col);
        ordered.col(n + j) = q.col(pairs[j].p_col);
    }

    Vector inv_sqrt(dim);
    inv_sqrt << nu.cwiseSqrt().cwiseInverse(), nu.cwiseSqrt().cwiseInverse();

    WilliamsonDecomposition result;
    result.S = root * ordered * inv_sqrt.asDiagonal();
    result.nu = nu;
    return result;
}

Vector symplectic_eigenvalues(const Matrix& cov) {
    return williamson(cov).nu;
}

}  // namespace gausspetz
