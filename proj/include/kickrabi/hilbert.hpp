// hilbert.hpp — Truncated Fock ⊗ qubit space and elementary operators
//
// Basis ordering interleaves the atom inside each Fock level:
//     index(atom, n) = 2n + (atom == e ? 1 : 0),   n ∈ [0, n_max]
// so |g,0⟩, |e,0⟩, |g,1⟩, |e,1⟩, ... Every operator here is a dense
// Eigen matrix over std::complex<Real>.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kickrabi {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using OperatorMatrix = ComplexMatrix<double>;
using StateVector = ComplexVector<double>;

enum class Atom { g, e };

constexpr int atom_sign(Atom atom) noexcept { return atom == Atom::e ? 1 : -1; }

class HilbertSpace {
public:
    explicit HilbertSpace(int n_max) : n_max_(n_max) {
        if (n_max < 1) {
            throw std::invalid_argument("HilbertSpace: n_max must be >= 1, got " +
                                        std::to_string(n_max));
        }
    }

    int n_max() const noexcept { return n_max_; }
    Eigen::Index dim() const noexcept { return 2 * (static_cast<Eigen::Index>(n_max_) + 1); }

    Eigen::Index index(Atom atom, int n) const {
        if (n < 0 || n > n_max_) {
            throw std::out_of_range("HilbertSpace: photon number " + std::to_string(n) +
                                    " outside [0, " + std::to_string(n_max_) + "]");
        }
        return 2 * static_cast<Eigen::Index>(n) + (atom == Atom::e ? 1 : 0);
    }

    static Atom atom_of(Eigen::Index i) noexcept { return (i % 2) ? Atom::e : Atom::g; }
    static int photons_of(Eigen::Index i) noexcept { return static_cast<int>(i / 2); }

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    int n_max_;
};

inline HilbertSpace make_space(int n_max) { return HilbertSpace(n_max); }

template <typename Real = double>
ComplexVector<Real> basis_state(const HilbertSpace& space, Atom atom, int n) {
    ComplexVector<Real> v = ComplexVector<Real>::Zero(space.dim());
    v(space.index(atom, n)) = Real(1);
    return v;
}

template <typename Real = double>
ComplexMatrix<Real> identity(const HilbertSpace& space) {
    return ComplexMatrix<Real>::Identity(space.dim(), space.dim());
}

template <typename Real = double>
struct LadderOperators {
    ComplexMatrix<Real> a;
    ComplexMatrix<Real> a_dag;
    ComplexMatrix<Real> number;
};

template <typename Real = double>
LadderOperators<Real> ladder_operators(const HilbertSpace& space) {
    const auto d = space.dim();
    LadderOperators<Real> ops{ComplexMatrix<Real>::Zero(d, d), {}, ComplexMatrix<Real>::Zero(d, d)};
    for (int n = 0; n <= space.n_max(); ++n) {
        for (Atom atom : {Atom::g, Atom::e}) {
            const auto i = space.index(atom, n);
            ops.number(i, i) = Real(n);
            if (n >= 1) {
                ops.a(space.index(atom, n - 1), i) = std::sqrt(Real(n));
            }
        }
    }
    ops.a_dag = ops.a.adjoint();
    return ops;
}

template <typename Real = double>
struct QubitOperators {
    ComplexMatrix<Real> sigma_z;
    ComplexMatrix<Real> sigma_plus;
    ComplexMatrix<Real> sigma_minus;
};

template <typename Real = double>
QubitOperators<Real> qubit_operators(const HilbertSpace& space) {
    const auto d = space.dim();
    QubitOperators<Real> ops{ComplexMatrix<Real>::Zero(d, d), ComplexMatrix<Real>::Zero(d, d), {}};
    for (int n = 0; n <= space.n_max(); ++n) {
        const auto ig = space.index(Atom::g, n);
        const auto ie = space.index(Atom::e, n);
        ops.sigma_z(ie, ie) = Real(1);
        ops.sigma_z(ig, ig) = Real(-1);
        ops.sigma_plus(ie, ig) = Real(1);
    }
    ops.sigma_minus = ops.sigma_plus.adjoint();
    return ops;
}

// Largest entrywise |M - M†|.
template <typename Derived>
auto hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Largest entrywise |M†M - I|.
template <typename Derived>
auto unitarity_error(const Eigen::MatrixBase<Derived>& m) {
    using Plain = typename Derived::PlainObject;
    return (m.adjoint() * m - Plain::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
auto max_abs_difference(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

}  // namespace kickrabi
