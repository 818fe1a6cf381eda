// oracles.hpp — Test-only reference computations, independent of the library's
// index arithmetic and eigendecomposition paths.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace oracle {

using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Field-major Kronecker layout: (field ⊗ qubit) with qubit basis (g, e),
// which reproduces index = 2n + (atom == e).
struct KronOperators {
    Matrix a, sigma_z, sigma_plus, identity;
};

inline KronOperators kron_operators(int n_max) {
    const int f = n_max + 1;
    Matrix field_a = Matrix::Zero(f, f);
    for (int n = 1; n < f; ++n) {
        field_a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    Matrix sz(2, 2), sp(2, 2);
    sz << -1, 0, 0, 1;  // (g, e)
    sp << 0, 0, 1, 0;   // |e⟩⟨g|
    const Matrix i_f = Matrix::Identity(f, f);
    const Matrix i_q = Matrix::Identity(2, 2);
    return KronOperators{kron(field_a, i_q), kron(i_f, sz), kron(i_f, sp), Matrix::Identity(2 * f, 2 * f)};
}

// exp(M) by scaling and squaring of a truncated Taylor series.
inline Matrix expm_taylor(const Matrix& m) {
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.25) {
        ++squarings;
    }
    const Matrix scaled = m / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    Matrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) {
        sum = sum * sum;
    }
    return sum;
}

inline Matrix evolution(const Matrix& h, double t) {
    using namespace std::complex_literals;
    return expm_taylor(Matrix(-1.0i * t * h));
}

}  // namespace oracle
