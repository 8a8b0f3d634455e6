#ifndef GAUSSPETZ_TEST_HELPERS_HPP
#define GAUSSPETZ_TEST_HELPERS_HPP

#include "gausspetz/sampling.hpp"
#include "gausspetz/state.hpp"

namespace gausspetz::testing {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

inline double symplectic_defect(const Matrix& s) {
    const int n = static_cast<int>(s.rows()) / 2;
    const Matrix omega = symplectic_form(n);
    return max_abs(s * omega * s.transpose() - omega);
}

}  // namespace gausspetz::testing

#endif
