// analysis.hpp — Closed-form predictions for the kicked Rabi model and their
// checks against exact dynamics.
//
// Enhancement regime: kicks spaced by τ_I = [(2m+1)π + φ]/Δ_s drive
// |g,0⟩ → |2,s⟩ with an effective two-level generator
//     K = (φ/T)|2,s⟩⟨2,s| + (2i g_s/T)|2,s⟩⟨g,0| − (2i g_s/T)|g,0⟩⟨2,s|,
// g_s = λ₀ d_{2,s}/Δ_s, Δ_s = ε_{2,s} − ε₀.
//
// Suppression regime: for short τ_I two kicks flip the sign of H_V, leaving
// H_JC plus the error operator ε̂ = −iτ_I[H_JC, H_V]/2.

#pragma once

#include "kickrabi/dynamics.hpp"
#include "kickrabi/hilbert.hpp"
#include "kickrabi/model.hpp"
#include "kickrabi/propagator.hpp"

#include <complex>
#include <vector>

namespace kickrabi {

// ---------------------------------------------------------- Phase matching

// Δ_s = ε_{2,s} − ε₀ from the closed-form doublet.
double transition_energy(const SystemParams& params, Branch s);

// τ_I = [(2m+1)π + φ]/Δ_s.
double resonance_tau(const SystemParams& params, Branch s, int m, double phi = 0.0);

struct PhaseOffset {
    double phi{0.0};  // in (−π, π]
    int m{0};
};

// Inverse of resonance_tau: the unique (φ, m ≥ 0) with φ ∈ (−π, π].
PhaseOffset phase_offset(const SystemParams& params, Branch s, double tau_i);

struct EffectiveTwoLevel {
    Branch s{Branch::minus};
    double delta_s{0.0};
    double g_s{0.0};        // signed: carries the sign of d_{2,s} under the dressed-state gauge
    double phi{0.0};
    double theta{0.0};      // π/4 − ε₀τ_I
    int m{0};
    double period{0.0};
    double predicted_transfer_time{0.0};  // πT/(4|g_s|)
    double predicted_peak_width{0.0};     // 8ω_c|g_s|/Δ_s, in ω_c τ_I units
    double validity{0.0};                  // N(g_s² + φ²)

    // K on the ordered basis (|g,0⟩, |2,s⟩).
    Eigen::Matrix2cd generator() const;
};

// Transfer times and peak widths use |g_s|, so either branch's sign
// convention gives the same predictions. Throws when λ₀ = 0.
EffectiveTwoLevel effective_two_level(const SystemParams& params, const KickSchedule& schedule,
                                      Branch s);

// Max-entry distance, on span{|g,0⟩, |2,s⟩}, between P e^{−iH_Rτ_I} and
// e^{iθ}(I − iKT). Meaningful only for |φ| ≪ 1.
double effective_step_residual(const ModelOperators<double>& model, const KickSchedule& schedule,
                               Branch s);

// --------------------------------------------------------- Resonance scans

struct Peak {
    Branch branch{Branch::minus};
    int m{0};
    double location{0.0};
    double width{0.0};       // full width at half prominence
    double height{0.0};
    double prominence{0.0};
};

struct ScanResult {
    std::vector<double> tau_grid;
    std::vector<double> p_max_plus;
    std::vector<double> p_max_minus;
    std::vector<Peak> detected_peaks;
    int kicks{0};

    const std::vector<double>& p_max(Branch s) const { return s == Branch::plus ? p_max_plus : p_max_minus; }
};

struct ScanOptions {
    int samples_per_interval{8};
    int samples_per_kick{4};
    unsigned threads{0};         // 0: hardware concurrency
    double peak_threshold{0.2};
};

// ceil(1.5·π/(4 min_s |g_s|)), capped at 500.
int default_scan_kicks(const SystemParams& params);

// start, start+step, ... up to stop inclusive (within step·1e-9).
std::vector<double> make_grid(double start, double stop, double step);

// Local maxima above threshold; widths at half prominence with linear
// interpolation; one peak (the tallest) per resonance index m.
std::vector<Peak> detect_peaks(const std::vector<double>& grid, const std::vector<double>& values,
                               Branch branch, const SystemParams& params, double threshold = 0.2);

// For each τ_I, evolve |g,0⟩ for max_kicks kicks and record max_t p_{2,±}.
// Grid points run in parallel; results are stored by grid index.
ScanResult scan_resonances(const SystemParams& params, const HilbertSpace& space,
                           const std::vector<double>& tau_grid, double tau_p, int max_kicks,
                           const ScanOptions& options = {});

// ------------------------------------------------- Decoupling and ε̂ error

// ‖U(NT) − (iΠ)^{N/2}(e^{−i(H_JC−H_V)τ_I} e^{−i(H_JC+H_V)τ_I})^{N/2}‖_max, N even.
double decoupling_factorization_residual(const ModelOperators<double>& model, double tau_i,
                                         int n_kicks);

struct EpsilonCoefficients {
    std::complex<double> g1;  // −iτ_I(ω₀+ω_c)λ₀/2
    std::complex<double> g2;  // iτ_Iλ₀²/2
};

EpsilonCoefficients epsilon_coefficients(const SystemParams& params, double tau_i);

struct EpsilonOperator {
    OperatorMatrix closed_form;  // g₁a†σ₊ + g₂a†²σ_z + h.c.
    OperatorMatrix commutator;   // −iτ_I[H_JC, H_V]/2
    EpsilonCoefficients coefficients;
    HilbertSpace space;

    // Max-entry difference restricted to photon numbers n ≤ n_max − 2.
    double interior_residual() const;
};

EpsilonOperator epsilon_operator(const SystemParams& params, double tau_i, const HilbertSpace& space);

enum class PEpsilonMode { exact, perturbative };

// p_ε(t) = 1 − |⟨e,0|ψ⟩|² − |⟨g,1|ψ⟩|² from |e,0⟩ at t = NT, N = 0, 2, ...,
// total_kicks. The perturbative mode uses
//     U(NT) ≈ (iΠ)^{N/2} e^{−iH_JC Nτ_I}(1 − i∫₀^{Nτ_I} e^{iH_JC t}ε̂e^{−iH_JC t}dt),
// with the integral done in the JC eigenbasis, and normalizes the state.
PopulationTrace p_epsilon_trace(const ModelOperators<double>& model, const KickSchedule& schedule,
                                int total_kicks, PEpsilonMode mode);

// ------------------------------------------------------- Effective JC model

struct EffectiveJc {
    double scale{1.0};  // τ_I/T
    double lambda{0.0};
    double omega_0{0.0};
    double omega_c{0.0};

    // p_{e,0}(t) from |e,0⟩ under the scaled JC Hamiltonian.
    double excited_population(double t) const;
};

EffectiveJc effective_jc_prediction(const SystemParams& params, const KickSchedule& schedule);

}  // namespace kickrabi
