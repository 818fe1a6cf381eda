// model.hpp — Rabi / Jaynes-Cummings Hamiltonians, parity, phase kick, dressed states
//
// Frequencies and times are in units of the field frequency (omega_c = 1 in
// every preset; the operators accept any positive omega_c).

#pragma once

#include "kickrabi/errors.hpp"
#include "kickrabi/hilbert.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kickrabi {

struct SystemParams {
    double omega_0{1.0};   // atomic transition frequency
    double omega_c{1.0};   // field frequency
    double lambda_0{0.0};  // coupling, half the vacuum Rabi frequency

    double detuning() const noexcept { return omega_0 - omega_c; }

    void validate() const {
        if (!(omega_c > 0.0) || !(omega_0 > 0.0) || !(lambda_0 >= 0.0) || !std::isfinite(omega_0) ||
            !std::isfinite(omega_c) || !std::isfinite(lambda_0)) {
            throw std::invalid_argument("SystemParams: need omega_c > 0, omega_0 > 0, lambda_0 >= 0");
        }
    }
};

enum class Branch { plus, minus };

constexpr const char* branch_name(Branch s) noexcept { return s == Branch::plus ? "+" : "-"; }

// ---------------------------------------------------------------- Hamiltonians

template <typename Real = double>
struct Hamiltonians {
    ComplexMatrix<Real> h_jc;
    ComplexMatrix<Real> h_v;
    ComplexMatrix<Real> h_rabi;
};

// H_JC = (w0/2) sz + wc a†a + l0 (a s+ + a† s-),  H_V = l0 (a† s+ + a s-),  H_R = H_JC + H_V.
template <typename Real = double>
Hamiltonians<Real> build_hamiltonians(const SystemParams& p, const HilbertSpace& space) {
    p.validate();
    const auto lad = ladder_operators<Real>(space);
    const auto q = qubit_operators<Real>(space);
    const Real w0 = Real(p.omega_0), wc = Real(p.omega_c), l0 = Real(p.lambda_0);

    Hamiltonians<Real> h;
    h.h_jc = (w0 / Real(2)) * q.sigma_z + wc * lad.number +
             l0 * (lad.a * q.sigma_plus + lad.a_dag * q.sigma_minus);
    h.h_v = l0 * (lad.a_dag * q.sigma_plus + lad.a * q.sigma_minus);
    h.h_rabi = h.h_jc + h.h_v;
    return h;
}

// Π = -σ_z (-1)^{a†a}; diagonal with entries ±1.
template <typename Real = double>
ComplexMatrix<Real> parity_operator(const HilbertSpace& space) {
    ComplexMatrix<Real> pi = ComplexMatrix<Real>::Zero(space.dim(), space.dim());
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const int n = HilbertSpace::photons_of(i);
        const int sz = atom_sign(HilbertSpace::atom_of(i));
        pi(i, i) = Real(-sz * ((n % 2) ? -1 : 1));
    }
    return pi;
}

// Diagonal of the kick generator π(a†a + σ_z/2)/2.
template <typename Real = double>
Eigen::Matrix<Real, Eigen::Dynamic, 1> kick_generator(const HilbertSpace& space) {
    Eigen::Matrix<Real, Eigen::Dynamic, 1> g(space.dim());
    const Real pi = std::numbers::pi_v<Real>;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const Real n = Real(HilbertSpace::photons_of(i));
        const Real sz = Real(atom_sign(HilbertSpace::atom_of(i)));
        g(i) = pi * (n + sz / Real(2)) / Real(2);
    }
    return g;
}

// exp(-i·fraction·generator), diagonal. fraction = 1 gives the full kick P.
template <typename Real = double>
ComplexMatrix<Real> partial_kick(const HilbertSpace& space, Real fraction) {
    const auto g = kick_generator<Real>(space);
    ComplexVector<Real> phases(space.dim());
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        phases(i) = std::polar(Real(1), -fraction * g(i));
    }
    return phases.asDiagonal();
}

// P = exp[-iπ(a†a + σ_z/2)/2], with P² = iΠ.
template <typename Real = double>
ComplexMatrix<Real> kick_operator(const HilbertSpace& space) {
    return partial_kick<Real>(space, Real(1));
}

// Free evolution exp[-i(w0 σ_z/2 + wc a†a) τ_P] with τ_P = (2m + 1/2)π/wc.
// Matches P up to a global phase; only defined on resonance.
template <typename Real = double>
ComplexMatrix<Real> kick_from_free_evolution(const SystemParams& p, const HilbertSpace& space, int m) {
    p.validate();
    if (m < 0) {
        throw std::invalid_argument("kick_from_free_evolution: m must be non-negative");
    }
    if (std::abs(p.omega_0 - p.omega_c) > 1e-12 * p.omega_c) {
        throw UnsupportedRegime("kick_from_free_evolution: requires omega_0 == omega_c");
    }
    const Real tau_p = (Real(2 * m) + Real(0.5)) * std::numbers::pi_v<Real> / Real(p.omega_c);
    ComplexVector<Real> phases(space.dim());
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const Real e = Real(p.omega_0) * Real(atom_sign(HilbertSpace::atom_of(i))) / Real(2) +
                       Real(p.omega_c) * Real(HilbertSpace::photons_of(i));
        phases(i) = std::polar(Real(1), -e * tau_p);
    }
    return phases.asDiagonal();
}

template <typename Real = double>
struct ModelOperators {
    SystemParams params;
    HilbertSpace space;
    ComplexMatrix<Real> h_rabi;
    ComplexMatrix<Real> h_jc;
    ComplexMatrix<Real> h_v;
    ComplexMatrix<Real> parity;
    ComplexMatrix<Real> kick;
};

template <typename Real = double>
ModelOperators<Real> build_model(const SystemParams& p, const HilbertSpace& space) {
    auto h = build_hamiltonians<Real>(p, space);
    return ModelOperators<Real>{p,
                                space,
                                std::move(h.h_rabi),
                                std::move(h.h_jc),
                                std::move(h.h_v),
                                parity_operator<Real>(space),
                                kick_operator<Real>(space)};
}

// ------------------------------------------------------------- Dressed states

// JC doublet for excitation number n, diagonalized in closed form on
// {|e,n-1⟩, |g,n⟩}. Gauge: ⟨e,n-1|n,+⟩ ≥ 0 and ⟨g,n|n,-⟩ ≥ 0, with
// |n,-⟩ obtained from |n,+⟩ by a right-handed quarter turn. Under this gauge
// d_minus ≤ 0 on resonance, so g_- carries a negative sign.
struct DressedDoublet {
    int n{1};
    double energy_plus{0.0};
    double energy_minus{0.0};
    Eigen::Vector2d block_plus;   // coefficients on (|e,n-1⟩, |g,n⟩)
    Eigen::Vector2d block_minus;
    double d_plus{0.0};           // ⟨e,n-1|n,+⟩
    double d_minus{0.0};          // ⟨e,n-1|n,-⟩
    double ground_energy{0.0};    // ε₀ = -w0/2

    double energy(Branch s) const noexcept { return s == Branch::plus ? energy_plus : energy_minus; }
    double overlap_e(Branch s) const noexcept { return s == Branch::plus ? d_plus : d_minus; }
    const Eigen::Vector2d& block(Branch s) const noexcept {
        return s == Branch::plus ? block_plus : block_minus;
    }

    // ε_{n,s} - ε₀; for n = 2 this is Δ_s.
    double transition_energy(Branch s) const noexcept { return energy(s) - ground_energy; }

    template <typename Real = double>
    ComplexVector<Real> state(const HilbertSpace& space, Branch s) const {
        ComplexVector<Real> v = ComplexVector<Real>::Zero(space.dim());
        const auto& c = block(s);
        v(space.index(Atom::e, n - 1)) = Real(c(0));
        v(space.index(Atom::g, n)) = Real(c(1));
        return v;
    }
};

inline DressedDoublet dressed_doublet(const SystemParams& p, int n) {
    p.validate();
    if (n < 1) {
        throw std::invalid_argument("dressed_doublet: n must be >= 1, got " + std::to_string(n));
    }
    const double delta = p.detuning();
    const double coupling = p.lambda_0 * std::sqrt(static_cast<double>(n));
    const double radius = std::hypot(delta / 2.0, coupling);
    const double center = (n - 0.5) * p.omega_c;

    // Mixing angle α with |n,+⟩ = (cos α, sin α); α = π/4 in the fully degenerate limit.
    double c = std::sqrt(0.5), s = std::sqrt(0.5);
    if (radius > 0.0) {
        const double half_angle = 0.5 * std::atan2(coupling, delta / 2.0);
        c = std::cos(half_angle);
        s = std::sin(half_angle);
    }

    DressedDoublet d;
    d.n = n;
    d.energy_plus = center + radius;
    d.energy_minus = center - radius;
    d.block_plus = Eigen::Vector2d(c, s);
    d.block_minus = Eigen::Vector2d(-s, c);
    d.d_plus = c;
    d.d_minus = -s;
    d.ground_energy = -p.omega_0 / 2.0;
    return d;
}

}  // namespace kickrabi
