#ifndef GAUSSPETZ_TYPES_HPP
#define GAUSSPETZ_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace gausspetz {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

namespace tol {

// Default numeric tolerances for double precision at desk scale
// (condition numbers <~ 1e3).
inline constexpr double symmetry = 1e-10;
inline constexpr double uncertainty_slack = 1e-9;
inline constexpr double faithfulness = 1e-7;

}  // namespace tol

}  // namespace gausspetz

#endif
