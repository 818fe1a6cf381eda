// dynamics.cpp — Dense-in-time sampling of the kicked evolution

#include "kickrabi/dynamics.hpp"

#include "kickrabi/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kickrabi {

namespace {

int parse_index(std::string_view text, const std::string& label) {
    int value = -1;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || value < 0) {
        throw std::invalid_argument("bad state label '" + label + "'");
    }
    return value;
}

}  // namespace

StateVector labeled_state(const std::string& label, const SystemParams& params,
                          const HilbertSpace& space) {
    const auto comma = label.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= label.size()) {
        throw std::invalid_argument("bad state label '" + label + "' (expected e.g. g,0 or 2,-)");
    }
    const std::string_view head(label.data(), comma);
    const std::string_view tail(label.data() + comma + 1, label.size() - comma - 1);

    if (head == "g" || head == "e") {
        const int n = parse_index(tail, label);
        if (n > space.n_max()) {
            throw std::invalid_argument("state label '" + label + "' exceeds n_max");
        }
        return basis_state(space, head == "g" ? Atom::g : Atom::e, n);
    }
    if (tail == "+" || tail == "-") {
        const int n = parse_index(head, label);
        if (n < 1 || n > space.n_max()) {
            throw std::invalid_argument("dressed label '" + label + "' needs 1 <= n <= n_max");
        }
        return dressed_doublet(params, n).state(space, tail == "+" ? Branch::plus : Branch::minus);
    }
    throw std::invalid_argument("bad state label '" + label + "'");
}

Projector make_projector(const std::string& label, const SystemParams& params,
                         const HilbertSpace& space) {
    return Projector{label, labeled_state(label, params, space)};
}

std::vector<Projector> make_projectors(const std::vector<std::string>& labels,
                                       const SystemParams& params, const HilbertSpace& space) {
    std::vector<Projector> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        out.push_back(make_projector(l, params, space));
    }
    return out;
}

const std::vector<double>& PopulationTrace::column(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::out_of_range("PopulationTrace: no column '" + label + "'");
    }
    return probabilities[static_cast<std::size_t>(it - labels.begin())];
}

double top_fock_population(const StateVector& psi, const HilbertSpace& space) {
    const auto first = space.index(Atom::g, space.n_max() - 1);
    return psi.tail(space.dim() - first).squaredNorm();
}

void check_leakage(const StateVector& psi, const HilbertSpace& space, double time, double threshold) {
    const double top = top_fock_population(psi, space);
    if (top > threshold) {
        char buffer[160];
        std::snprintf(buffer, sizeof buffer,
                      "truncation leakage: top two Fock levels hold %.3e (> %.1e) at t = %.6g; increase n_max",
                      top, threshold, time);
        throw TruncationLeakage(buffer, time, top);
    }
}

PopulationTrace evolve_trace(const ModelOperators<double>& model, const KickSchedule& schedule,
                             const StateVector& initial, const std::vector<Projector>& projectors,
                             const TraceOptions& options) {
    schedule.validate();
    const auto& space = model.space;
    if (initial.size() != space.dim()) {
        throw std::invalid_argument("evolve_trace: initial state has wrong dimension");
    }
    if (std::abs(initial.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("evolve_trace: initial state is not normalized");
    }
    if (options.samples_per_interval < 1 || options.samples_per_kick < 1) {
        throw std::invalid_argument("evolve_trace: samples per interval must be >= 1");
    }

    const SpectralPropagator<double> rabi(model.h_rabi);
    std::vector<OperatorMatrix> free_steps;
    for (int k = 1; k <= options.samples_per_interval; ++k) {
        free_steps.push_back(rabi(schedule.tau_i * k / options.samples_per_interval));
    }
    std::vector<OperatorMatrix> kick_steps;
    if (schedule.tau_p > 0.0) {
        for (int k = 1; k <= options.samples_per_kick; ++k) {
            const double frac = static_cast<double>(k) / options.samples_per_kick;
            kick_steps.push_back(options.mode == KickMode::kicked ? partial_kick<double>(space, frac)
                                                                  : rabi(schedule.tau_p * frac));
        }
    }
    const Eigen::VectorXd parity_diag = model.parity.diagonal().real();

    PopulationTrace trace;
    for (const auto& p : projectors) {
        trace.labels.push_back(p.label);
    }
    trace.probabilities.resize(projectors.size());

    auto record = [&](double t, const StateVector& psi, bool interior_kick) {
        check_leakage(psi, space, t, options.leakage_threshold);
        trace.times.push_back(t);
        for (std::size_t j = 0; j < projectors.size(); ++j) {
            trace.probabilities[j].push_back(std::norm(projectors[j].vector.dot(psi)));
        }
        trace.norm.push_back(psi.norm());
        trace.parity.push_back(psi.cwiseAbs2().dot(parity_diag));
        trace.in_kick.push_back(interior_kick ? 1 : 0);
    };

    StateVector psi = initial;
    record(0.0, psi, false);
    for (int kick = 0; kick < schedule.n_kicks; ++kick) {
        const double start = kick * schedule.period();
        for (int k = 0; k < options.samples_per_interval; ++k) {
            const double t = start + schedule.tau_i * (k + 1) / options.samples_per_interval;
            record(t, free_steps[static_cast<std::size_t>(k)] * psi, false);
        }
        psi = free_steps.back() * psi;

        if (kick_steps.empty()) {
            // Instantaneous kick: no extra sample time.
            if (options.mode == KickMode::kicked) {
                psi = model.kick * psi;
            }
            continue;
        }
        for (int k = 0; k < options.samples_per_kick; ++k) {
            const bool last = k + 1 == options.samples_per_kick;
            const double t = last ? (kick + 1) * schedule.period()
                                  : start + schedule.tau_i +
                                        schedule.tau_p * (k + 1) / options.samples_per_kick;
            record(t, kick_steps[static_cast<std::size_t>(k)] * psi,
                   !last && options.mode == KickMode::kicked);
        }
        psi = kick_steps.back() * psi;
    }
    return trace;
}

}  // namespace kickrabi
