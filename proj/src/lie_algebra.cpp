#include "gausspetz/lie_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "gausspetz/calculus.hpp"
#include "gausspetz/state.hpp"

namespace gausspetz {

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
double one_norm(const Mat<Scalar>& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

constexpr double kSeriesRadius = 0.25;

// Eigen's dot() conjugates the left argument; the algebra needs the plain
// bilinear form u^T v.
template <typename Scalar>
Scalar bilinear(const Vec<Scalar>& u, const Vec<Scalar>& v) {
    return (u.transpose() * v)(0, 0);
}

// (I - e^{-X})/X by Taylor series; caller guarantees small norm.
template <typename Scalar>
Mat<Scalar> phi_minus_series(const Mat<Scalar>& x) {
    const int dim = static_cast<int>(x.rows());
    Mat<Scalar> term = Mat<Scalar>::Identity(dim, dim);
    Mat<Scalar> sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * (-x) / static_cast<double>(k + 1)).eval();
        sum += term;
        if (one_norm(term) < 1e-18) break;
    }
    return sum;
}

// (e^X - I)/X by Taylor series.
template <typename Scalar>
Mat<Scalar> phi_plus_series(const Mat<Scalar>& x) {
    const int dim = static_cast<int>(x.rows());
    Mat<Scalar> term = Mat<Scalar>::Identity(dim, dim);
    Mat<Scalar> sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * x / static_cast<double>(k + 1)).eval();
        sum += term;
        if (one_norm(term) < 1e-18) break;
    }
    return sum;
}

// (X - sinh X)/X^2 = -(X/3! + X^3/5! + X^5/7! + ...).
template <typename Scalar>
Mat<Scalar> phi_sinh_series(const Mat<Scalar>& x) {
    const Mat<Scalar> x2 = x * x;
    Mat<Scalar> term = x / 6.0;
    Mat<Scalar> sum = term;
    for (int k = 2; k <= 16; ++k) {
        term = (term * x2 / static_cast<double>(2 * k * (2 * k + 1))).eval();
        sum += term;
        if (one_norm(term) < 1e-18) break;
    }
    return -sum;
}

template <typename Scalar>
Mat<Scalar> bordered_exp(const Mat<Scalar>& x, const Vec<Scalar>& s, Scalar a,
                         const Matrix& omega) {
    const int dim = static_cast<int>(x.rows());
    const Mat<Scalar> omega_s = omega.template cast<Scalar>();

    Mat<Scalar> exp_x = x.exp();
    Vec<Scalar> left_border;   // (I - e^{-X})/X * s
    Vec<Scalar> right_border;  // (e^X - I)/X * s
    Scalar corner_quad;        // s^T Omega (X - sinh X)/X^2 s

    if (one_norm(x) < kSeriesRadius) {
        left_border = phi_minus_series(x) * s;
        right_border = phi_plus_series(x) * s;
        corner_quad = bilinear<Scalar>(omega_s * s, phi_sinh_series(x) * s);
    } else {
        const Mat<Scalar> id = Mat<Scalar>::Identity(dim, dim);
        Eigen::FullPivLU<Mat<Scalar>> lu(x);
        const Mat<Scalar> exp_minus_x = (-x).exp();
        left_border = lu.solve((id - exp_minus_x) * s);
        right_border = lu.solve((exp_x - id) * s);
        const Mat<Scalar> sinh_x = 0.5 * (exp_x - exp_minus_x);
        corner_quad = bilinear<Scalar>(
            omega_s * s, lu.solve(lu.solve(x * s - sinh_x * s)));
    }

    Mat<Scalar> result = Mat<Scalar>::Zero(dim + 2, dim + 2);
    result(0, 0) = Scalar(1);
    result(dim + 1, dim + 1) = Scalar(1);
    result.block(1, 1, dim, dim) = exp_x;
    result.block(0, 1, 1, dim) = (omega_s * left_border).transpose();
    result.block(1, dim + 1, dim, 1) = right_border;
    result(0, dim + 1) = a + corner_quad;
    return result;
}

}  // namespace

QuadraticHamiltonian::QuadraticHamiltonian(Matrix x, Vector s_in, double a_in)
    : X(std::move(x)), s(std::move(s_in)), a(a_in) {
    if (X.rows() != X.cols() || X.rows() % 2 != 0 || X.rows() == 0) {
        throw std::invalid_argument("QuadraticHamiltonian: X must be 2n x 2n");
    }
    if (s.size() != X.rows()) {
        throw std::invalid_argument(
            "QuadraticHamiltonian: s must match the dimension of X");
    }
    n_modes = static_cast<int>(X.rows()) / 2;
    const Matrix omega_x = symplectic_form(n_modes) * X;
    if (symmetry_defect(omega_x) > 1e-9) {
        throw std::domain_error(
            "QuadraticHamiltonian: Omega*X must be symmetric, defect " +
            std::to_string(symmetry_defect(omega_x)));
    }
}

Matrix embed(const QuadraticHamiltonian& h) {
    const int dim = 2 * h.n_modes;
    const Matrix omega = symplectic_form(h.n_modes);
    Matrix m = Matrix::Zero(dim + 2, dim + 2);
    m.block(1, 1, dim, dim) = h.X;
    m.block(1, dim + 1, dim, 1) = h.s;
    m.block(0, 1, 1, dim) = (omega * h.s).transpose();
    m(0, dim + 1) = h.a;
    return m;
}

Matrix GroupElement::central() const {
    const int dim = 2 * n_modes();
    return matrix.block(1, 1, dim, dim);
}

Vector GroupElement::right_border() const {
    const int dim = 2 * n_modes();
    return matrix.block(1, dim + 1, dim, 1);
}

double GroupElement::corner() const {
    return matrix(0, matrix.cols() - 1);
}

GroupElement lie_exp(const QuadraticHamiltonian& h) {
    const Matrix omega = symplectic_form(h.n_modes);
    return GroupElement{bordered_exp<double>(h.X, h.s, h.a, omega)};
}

QuadraticHamiltonian product_to_single(const QuadraticHamiltonian& h1,
                                       const QuadraticHamiltonian& h2) {
    if (h1.n_modes != h2.n_modes) {
        throw std::invalid_argument("product_to_single: mode count mismatch");
    }
    const int dim = 2 * h1.n_modes;
    const Matrix product = lie_exp(h1).matrix * lie_exp(h2).matrix;

    const Matrix central = product.block(1, 1, dim, dim);
    const Eigen::EigenSolver<Matrix> eig(central);
    for (int k = 0; k < dim; ++k) {
        const Complex lambda = eig.eigenvalues()(k);
        if (lambda.real() < 0.0 &&
            std::abs(lambda.imag()) <= 1e-12 * std::abs(lambda)) {
            throw std::domain_error(
                "product_to_single: central block has an eigenvalue on the "
                "negative real axis (" + std::to_string(lambda.real()) +
                "); the product has no real logarithm in the algebra");
        }
    }

    const Matrix log_product = product.log();
    Matrix x3 = log_product.block(1, 1, dim, dim);
    const Vector s3 = log_product.block(1, dim + 1, dim, 1);
    const double a3 = log_product(0, dim + 1);

    // Round the log back onto the algebra: Omega X must be exactly
    // symmetric for downstream use.
    const Matrix omega = symplectic_form(h1.n_modes);
    const Matrix omega_x = omega * x3;
    const double defect = symmetry_defect(omega_x);
    if (defect > 1e-9) {
        throw std::domain_error(
            "product_to_single: logarithm left the algebra, Omega*X defect " +
            std::to_string(defect));
    }
    x3 = omega.transpose() * (0.5 * (omega_x + omega_x.transpose()));
    return QuadraticHamiltonian(x3, s3, a3);
}

SandwichFactorization sandwich_via_golden_rule(const Matrix& cov_sigma,
                                               const Vector& x) {
    const int n = static_cast<int>(cov_sigma.rows()) / 2;
    if (x.size() != 2 * n) {
        throw std::invalid_argument(
            "sandwich_via_golden_rule: displacement dimension mismatch");
    }
    const HamiltonianForm form = hamiltonian_from_covariance(cov_sigma);
    const Matrix omega = symplectic_form(n);

    // sqrt(sigma0) and D_x as group elements with the complex generator
    // -(i/2) Omega H for the state halves.
    const Complex half_i(0.0, 0.5);
    const ComplexMatrix gen = -half_i * (omega * form.H).cast<Complex>();
    const ComplexMatrix half = bordered_exp<Complex>(
        gen, ComplexVector::Zero(2 * n), Complex(0.0), omega);
    const ComplexMatrix disp =
        bordered_exp<Complex>(ComplexMatrix::Zero(2 * n, 2 * n),
                              x.cast<Complex>(), Complex(0.0), omega);
    const ComplexMatrix product = half * disp * half;

    const ComplexMatrix central = product.block(1, 1, 2 * n, 2 * n);
    const ComplexVector border = product.block(1, 2 * n + 1, 2 * n, 1);

    // Re-factor as displacement * central * inverse displacement: the
    // conjugating vector solves (I - C) v = border, and the corner of the
    // central factor is v^T Omega^T C v.
    const ComplexMatrix lhs =
        ComplexMatrix::Identity(2 * n, 2 * n) - central;
    const ComplexVector v = lhs.fullPivLu().solve(border);
    // v^T Omega^T C v = (Omega v)^T (C v).
    const Complex corner =
        bilinear<Complex>(omega.cast<Complex>() * v, central * v);

    const Complex weight = Complex(0.0, 0.5) * corner;
    if (std::abs(weight.imag()) > 1e-9 ||
        v.real().cwiseAbs().maxCoeff() > 1e-9) {
        throw std::domain_error(
            "sandwich_via_golden_rule: factorization did not reduce to a "
            "real weight and an imaginary displacement");
    }
    return SandwichFactorization{weight.real(), v.imag()};
}

}  // namespace gausspetz
