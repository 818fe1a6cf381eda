// analysis.cpp — Phase matching, resonance scans, decoupling and ε̂ analysis

#include "kickrabi/analysis.hpp"

#include "kickrabi/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace kickrabi {

using std::numbers::pi;
using namespace std::complex_literals;

// ---------------------------------------------------------- Phase matching

double transition_energy(const SystemParams& params, Branch s) {
    return dressed_doublet(params, 2).transition_energy(s);
}

double resonance_tau(const SystemParams& params, Branch s, int m, double phi) {
    if (m < 0) {
        throw std::invalid_argument("resonance_tau: m must be non-negative");
    }
    if (!(std::abs(phi) < pi)) {
        throw std::invalid_argument("resonance_tau: |phi| must be < pi");
    }
    const double delta = transition_energy(params, s);
    if (!(delta > 0.0)) {
        throw std::out_of_range("resonance_tau: non-positive transition energy");
    }
    return ((2 * m + 1) * pi + phi) / delta;
}

PhaseOffset phase_offset(const SystemParams& params, Branch s, double tau_i) {
    const double delta = transition_energy(params, s);
    const double accumulated = tau_i * delta;
    if (!(accumulated > 0.0)) {
        throw std::out_of_range("phase_offset: tau_i * Delta_s must be positive");
    }
    // φ = τΔ − (2m+1)π ∈ (−π, π]  ⇔  m = ceil(τΔ/(2π) − 1).
    int m = static_cast<int>(std::ceil(accumulated / (2.0 * pi) - 1.0));
    m = std::max(m, 0);
    double phi = accumulated - (2 * m + 1) * pi;
    if (phi > pi) {
        ++m;
        phi -= 2.0 * pi;
    } else if (phi <= -pi && m > 0) {
        --m;
        phi += 2.0 * pi;
    }
    return PhaseOffset{phi, m};
}

namespace {

EffectiveTwoLevel two_level_parameters(const SystemParams& params, const KickSchedule& schedule,
                                       Branch s) {
    const auto doublet = dressed_doublet(params, 2);
    const auto offset = phase_offset(params, s, schedule.tau_i);

    EffectiveTwoLevel e;
    e.s = s;
    e.delta_s = doublet.transition_energy(s);
    e.g_s = params.lambda_0 * doublet.overlap_e(s) / e.delta_s;
    e.phi = offset.phi;
    e.m = offset.m;
    e.theta = pi / 4.0 - doublet.ground_energy * schedule.tau_i;
    e.period = schedule.period();
    e.predicted_peak_width = 8.0 * params.omega_c * std::abs(e.g_s) / e.delta_s;
    e.validity = schedule.n_kicks * (e.g_s * e.g_s + e.phi * e.phi);
    e.predicted_transfer_time =
        e.g_s != 0.0 ? pi * e.period / (4.0 * std::abs(e.g_s)) : std::numeric_limits<double>::infinity();
    return e;
}

}  // namespace

Eigen::Matrix2cd EffectiveTwoLevel::generator() const {
    Eigen::Matrix2cd k = Eigen::Matrix2cd::Zero();
    k(1, 1) = phi / period;
    k(1, 0) = 2.0i * g_s / period;
    k(0, 1) = -2.0i * g_s / period;
    return k;
}

EffectiveTwoLevel effective_two_level(const SystemParams& params, const KickSchedule& schedule,
                                      Branch s) {
    params.validate();
    schedule.validate();
    if (params.lambda_0 == 0.0) {
        throw std::invalid_argument("effective_two_level: lambda_0 = 0 gives no transfer");
    }
    return two_level_parameters(params, schedule, s);
}

double effective_step_residual(const ModelOperators<double>& model, const KickSchedule& schedule,
                               Branch s) {
    const auto eff = two_level_parameters(model.params, schedule, s);
    if (std::abs(eff.phi) > 0.5) {
        std::clog << "effective_step_residual: |phi| = " << std::abs(eff.phi)
                  << " is outside the small-phase regime\n";
    }
    const auto& space = model.space;
    const OperatorMatrix step = kicked_step(model, schedule);

    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 2> basis(space.dim(), 2);
    basis.col(0) = basis_state(space, Atom::g, 0);
    basis.col(1) = dressed_doublet(model.params, 2).state(space, s);
    const Eigen::Matrix2cd exact = basis.adjoint() * step * basis;
    const Eigen::Matrix2cd approx =
        std::polar(1.0, eff.theta) * (Eigen::Matrix2cd::Identity() - 1.0i * eff.generator() * eff.period);
    return (exact - approx).cwiseAbs().maxCoeff();
}

// --------------------------------------------------------- Resonance scans

int default_scan_kicks(const SystemParams& params) {
    const auto doublet = dressed_doublet(params, 2);
    double g_min = std::numeric_limits<double>::infinity();
    for (Branch s : {Branch::plus, Branch::minus}) {
        const double g = std::abs(params.lambda_0 * doublet.overlap_e(s) / doublet.transition_energy(s));
        g_min = std::min(g_min, g);
    }
    if (!(g_min > 0.0)) {
        return 500;
    }
    const double kicks = std::ceil(1.5 * pi / (4.0 * g_min));
    return static_cast<int>(std::min(kicks, 500.0));
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw std::invalid_argument("make_grid: need step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = start + static_cast<double>(i) * step;
    }
    return grid;
}

namespace {

// Position where the line through (x0, y0), (x1, y1) reaches level.
double crossing(double x0, double y0, double x1, double y1, double level) {
    if (y1 == y0) {
        return 0.5 * (x0 + x1);
    }
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

std::vector<Peak> detect_peaks(const std::vector<double>& grid, const std::vector<double>& values,
                               Branch branch, const SystemParams& params, double threshold) {
    if (grid.size() != values.size()) {
        throw std::invalid_argument("detect_peaks: grid and values differ in length");
    }
    const std::size_t n = values.size();
    std::map<int, Peak> best;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double y = values[i];
        if (!(y >= threshold && y > values[i - 1] && y >= values[i + 1])) {
            continue;
        }
        // Topographic prominence: lowest point before reaching higher ground.
        double left_min = y;
        std::size_t l = i;
        while (l > 0 && values[l - 1] <= y) {
            --l;
            left_min = std::min(left_min, values[l]);
        }
        double right_min = y;
        std::size_t r = i;
        while (r + 1 < n && values[r + 1] <= y) {
            ++r;
            right_min = std::min(right_min, values[r]);
        }
        const double prominence = y - std::max(left_min, right_min);
        const double half = y - 0.5 * prominence;

        std::size_t a = i;
        while (a > l && values[a - 1] > half) {
            --a;
        }
        std::size_t b = i;
        while (b < r && values[b + 1] > half) {
            ++b;
        }
        const double left_x =
            a > 0 ? crossing(grid[a - 1], values[a - 1], grid[a], values[a], half) : grid[a];
        const double right_x =
            b + 1 < n ? crossing(grid[b], values[b], grid[b + 1], values[b + 1], half) : grid[b];

        // Parabolic refinement of the apex.
        double location = grid[i];
        const double curvature = values[i - 1] - 2.0 * y + values[i + 1];
        if (curvature < 0.0) {
            const double h = 0.5 * (grid[i + 1] - grid[i - 1]);
            location += 0.5 * h * (values[i - 1] - values[i + 1]) / curvature;
        }

        Peak p{branch, phase_offset(params, branch, location).m, location, right_x - left_x, y, prominence};
        auto it = best.find(p.m);
        if (it == best.end() || it->second.height < p.height) {
            best[p.m] = p;
        }
    }
    std::vector<Peak> out;
    for (const auto& [m, p] : best) {
        out.push_back(p);
    }
    return out;
}

ScanResult scan_resonances(const SystemParams& params, const HilbertSpace& space,
                           const std::vector<double>& tau_grid, double tau_p, int max_kicks,
                           const ScanOptions& options) {
    params.validate();
    if (max_kicks < 1) {
        throw std::invalid_argument("scan_resonances: max_kicks must be >= 1");
    }
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > 0.0) || (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))) {
            throw std::invalid_argument("scan_resonances: grid must be positive and strictly increasing");
        }
    }
    const auto model = build_model<double>(params, space);
    const StateVector initial = basis_state(space, Atom::g, 0);
    const auto projectors = make_projectors({"2,+", "2,-"}, params, space);
    TraceOptions trace_options;
    trace_options.samples_per_interval = options.samples_per_interval;
    trace_options.samples_per_kick = options.samples_per_kick;

    ScanResult result;
    result.tau_grid = tau_grid;
    result.kicks = max_kicks;
    result.p_max_plus.assign(tau_grid.size(), 0.0);
    result.p_max_minus.assign(tau_grid.size(), 0.0);
    std::vector<std::exception_ptr> errors(tau_grid.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tau_grid.size(); i = next++) {
            try {
                const KickSchedule schedule{tau_grid[i], tau_p, max_kicks};
                const auto trace = evolve_trace(model, schedule, initial, projectors, trace_options);
                result.p_max_plus[i] = *std::max_element(trace.probabilities[0].begin(),
                                                         trace.probabilities[0].end());
                result.p_max_minus[i] = *std::max_element(trace.probabilities[1].begin(),
                                                          trace.probabilities[1].end());
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tau_grid.size(), 1)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    for (Branch s : {Branch::plus, Branch::minus}) {
        auto peaks = detect_peaks(tau_grid, result.p_max(s), s, params, options.peak_threshold);
        result.detected_peaks.insert(result.detected_peaks.end(), peaks.begin(), peaks.end());
    }
    return result;
}

// ------------------------------------------------- Decoupling and ε̂ error

double decoupling_factorization_residual(const ModelOperators<double>& model, double tau_i,
                                         int n_kicks) {
    if (n_kicks < 0 || n_kicks % 2 != 0) {
        throw std::invalid_argument("decoupling_factorization_residual: n_kicks must be even and >= 0");
    }
    const KickSchedule schedule{tau_i, 0.0, n_kicks};
    const OperatorMatrix kicked = kicked_evolution(model, schedule);

    const OperatorMatrix pair = propagator<double>(model.h_jc - model.h_v, tau_i) *
                                propagator<double>(model.h_jc + model.h_v, tau_i);
    const OperatorMatrix i_parity = 1.0i * model.parity;
    const OperatorMatrix factorized =
        checked_power<double>(i_parity, n_kicks / 2) * checked_power<double>(pair, n_kicks / 2);
    return max_abs_difference(kicked, factorized);
}

EpsilonCoefficients epsilon_coefficients(const SystemParams& params, double tau_i) {
    const double l0 = params.lambda_0;
    return EpsilonCoefficients{-1.0i * tau_i * (params.omega_0 + params.omega_c) * l0 / 2.0,
                               1.0i * tau_i * l0 * l0 / 2.0};
}

double EpsilonOperator::interior_residual() const {
    const auto block = 2 * static_cast<Eigen::Index>(space.n_max() - 1);
    return (closed_form - commutator).topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

EpsilonOperator epsilon_operator(const SystemParams& params, double tau_i, const HilbertSpace& space) {
    params.validate();
    const auto lad = ladder_operators<double>(space);
    const auto q = qubit_operators<double>(space);
    const auto coeffs = epsilon_coefficients(params, tau_i);

    const OperatorMatrix raising =
        coeffs.g1 * lad.a_dag * q.sigma_plus + coeffs.g2 * lad.a_dag * lad.a_dag * q.sigma_z;
    const auto h = build_hamiltonians<double>(params, space);
    return EpsilonOperator{raising + raising.adjoint(),
                           -0.5i * tau_i * (h.h_jc * h.h_v - h.h_v * h.h_jc), coeffs, space};
}

namespace {

// ∫₀^t e^{iωt'} dt' = t·e^{iωt/2}·sinc(ωt/2), stable at ω → 0.
std::complex<double> phase_integral(double omega, double t) {
    const double x = 0.5 * omega * t;
    const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return t * std::polar(1.0, x) * sinc;
}

double p_epsilon_of(const StateVector& psi, const HilbertSpace& space) {
    return 1.0 - std::norm(psi(space.index(Atom::e, 0))) - std::norm(psi(space.index(Atom::g, 1)));
}

}  // namespace

PopulationTrace p_epsilon_trace(const ModelOperators<double>& model, const KickSchedule& schedule,
                                int total_kicks, PEpsilonMode mode) {
    schedule.validate();
    if (total_kicks < 0 || total_kicks % 2 != 0) {
        throw std::invalid_argument("p_epsilon_trace: total_kicks must be even and >= 0");
    }
    const auto& space = model.space;
    const StateVector initial = basis_state(space, Atom::e, 0);
    const Eigen::VectorXd parity_diag = model.parity.diagonal().real();

    PopulationTrace trace;
    trace.labels = {"p_eps"};
    trace.probabilities.resize(1);
    auto record = [&](int n, const StateVector& psi) {
        trace.times.push_back(n * schedule.period());
        trace.probabilities[0].push_back(p_epsilon_of(psi, space));
        trace.norm.push_back(psi.norm());
        trace.parity.push_back(psi.cwiseAbs2().dot(parity_diag));
        trace.in_kick.push_back(0);
    };

    if (mode == PEpsilonMode::exact) {
        const OperatorMatrix step = kicked_step(model, schedule);
        StateVector psi = initial;
        record(0, psi);
        for (int n = 1; n <= total_kicks; ++n) {
            psi = step * psi;
            if (n % 2 == 0) {
                check_leakage(psi, space, n * schedule.period(), 1e-8);
                record(n, psi);
            }
        }
        return trace;
    }

    const SpectralPropagator<double> jc(model.h_jc);
    const auto& energies = jc.energies();
    const auto& vectors = jc.eigenvectors();
    const auto eps = epsilon_operator(model.params, schedule.tau_i, space);
    const OperatorMatrix eps_eigen = vectors.adjoint() * eps.closed_form * vectors;
    const StateVector c0 = vectors.adjoint() * initial;
    const Eigen::Index d = space.dim();

    for (int n = 0; n <= total_kicks; n += 2) {
        const double t = n * schedule.tau_i;
        OperatorMatrix integrated(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = 0; k < d; ++k) {
                integrated(j, k) = eps_eigen(j, k) * phase_integral(energies(j) - energies(k), t);
            }
        }
        StateVector c = c0 - 1.0i * (integrated * c0);
        for (Eigen::Index j = 0; j < d; ++j) {
            c(j) *= std::polar(1.0, -energies(j) * t);
        }
        StateVector psi = vectors * c;
        // (iΠ)^{N/2}: Π is diagonal ±1.
        const std::complex<double> i_pow = std::pow(1.0i, n / 2);
        for (Eigen::Index j = 0; j < d; ++j) {
            psi(j) *= i_pow * ((n / 2) % 2 ? parity_diag(j) : 1.0);
        }
        psi.normalize();
        record(n, psi);
    }
    return trace;
}

// ------------------------------------------------------- Effective JC model

double EffectiveJc::excited_population(double t) const {
    const double detuning = omega_0 - omega_c;
    const double radius = std::hypot(0.5 * detuning, lambda);
    if (radius == 0.0) {
        return 1.0;
    }
    const double c = std::cos(radius * t);
    const double s = std::sin(radius * t);
    const double ratio = 0.5 * detuning / radius;
    return c * c + ratio * ratio * s * s;
}

EffectiveJc effective_jc_prediction(const SystemParams& params, const KickSchedule& schedule) {
    params.validate();
    schedule.validate();
    const double scale = schedule.tau_i / schedule.period();
    return EffectiveJc{scale, params.lambda_0 * scale, params.omega_0 * scale, params.omega_c * scale};
}

}  // namespace kickrabi
