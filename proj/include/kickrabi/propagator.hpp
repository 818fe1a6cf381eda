// propagator.hpp — Exact propagators and the kicked one-period operator
//
// exp(-iHt) is built from a Hermitian eigendecomposition, so time-independent
// evolution carries no splitting error. U(NT) = (P e^{-i H_R τ_I})^N.

#pragma once

#include "kickrabi/errors.hpp"
#include "kickrabi/hilbert.hpp"
#include "kickrabi/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace kickrabi {

struct KickSchedule {
    double tau_i{1.0};   // free Rabi interval
    double tau_p{0.0};   // kick duration
    int n_kicks{0};

    double period() const noexcept { return tau_i + tau_p; }
    double duration() const noexcept { return n_kicks * period(); }

    void validate() const {
        if (!(tau_i > 0.0) || !(tau_p >= 0.0) || n_kicks < 0 || !std::isfinite(tau_i) ||
            !std::isfinite(tau_p)) {
            throw std::invalid_argument("KickSchedule: need tau_i > 0, tau_p >= 0, n_kicks >= 0");
        }
    }
};

// Eigendecomposition of a Hermitian generator, reusable for many times t.
template <typename Real = double>
class SpectralPropagator {
public:
    using Matrix = ComplexMatrix<Real>;
    using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

    explicit SpectralPropagator(const Matrix& h) {
        if (h.rows() != h.cols() || h.rows() == 0) {
            throw std::invalid_argument("propagator: Hamiltonian must be square and non-empty");
        }
        if (hermiticity_error(h) > Real(kHermitianTolerance)) {
            throw std::invalid_argument("propagator: Hamiltonian is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("propagator: eigendecomposition failed");
        }
        energies_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    }

    Matrix operator()(Real t) const {
        ComplexVector<Real> phases(energies_.size());
        for (Eigen::Index k = 0; k < energies_.size(); ++k) {
            phases(k) = std::polar(Real(1), -energies_(k) * t);
        }
        return vectors_ * phases.asDiagonal() * vectors_.adjoint();
    }

    const RealVector& energies() const noexcept { return energies_; }
    const Matrix& eigenvectors() const noexcept { return vectors_; }

private:
    RealVector energies_;
    Matrix vectors_;
};

template <typename Real = double>
ComplexMatrix<Real> propagator(const ComplexMatrix<Real>& h, Real t) {
    return SpectralPropagator<Real>(h)(t);
}

// One period: P·exp(-i H_R τ_I).
template <typename Real = double>
ComplexMatrix<Real> kicked_step(const ModelOperators<Real>& model, const KickSchedule& schedule) {
    schedule.validate();
    return model.kick * propagator<Real>(model.h_rabi, Real(schedule.tau_i));
}

// N-th power of an operator by repeated multiplication; unitarity is checked
// every 64 factors and a drift beyond tolerance raises NumericGuard.
template <typename Real = double>
ComplexMatrix<Real> checked_power(const ComplexMatrix<Real>& step, int n) {
    if (n < 0) {
        throw std::invalid_argument("checked_power: negative exponent");
    }
    ComplexMatrix<Real> u = ComplexMatrix<Real>::Identity(step.rows(), step.cols());
    for (int k = 1; k <= n; ++k) {
        u = step * u;
        if (k % 64 == 0 && unitarity_error(u) > Real(kUnitaryTolerance)) {
            throw NumericGuard("checked_power: unitarity drift after " + std::to_string(k) + " steps");
        }
    }
    return u;
}

// U(NT) = (P e^{-i H_R τ_I})^N.
template <typename Real = double>
ComplexMatrix<Real> kicked_evolution(const ModelOperators<Real>& model, const KickSchedule& schedule) {
    return checked_power<Real>(kicked_step(model, schedule), schedule.n_kicks);
}

}  // namespace kickrabi
