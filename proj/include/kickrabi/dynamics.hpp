// dynamics.hpp — Time-resolved populations under the kicked sequence
//
// Inside each τ_I interval the state evolves under exp(-i H_R t'); inside
// each kick interval it follows the kick generator linearly in time,
// exp[-i π(a†a + σ_z/2)/2 · t'/τ_P]. Only the kick endpoints are physical;
// interior kick samples are flagged in the trace.

#pragma once

#include "kickrabi/hilbert.hpp"
#include "kickrabi/model.hpp"
#include "kickrabi/propagator.hpp"

#include <string>
#include <vector>

namespace kickrabi {

// A named projector |v⟩⟨v|. Labels are "g,n" / "e,n" for bare states and
// "n,+" / "n,-" for JC dressed states (n ≥ 1).
struct Projector {
    std::string label;
    StateVector vector;
};

Projector make_projector(const std::string& label, const SystemParams& params,
                         const HilbertSpace& space);
std::vector<Projector> make_projectors(const std::vector<std::string>& labels,
                                       const SystemParams& params, const HilbertSpace& space);

// Initial states use the same labels as projectors.
StateVector labeled_state(const std::string& label, const SystemParams& params,
                          const HilbertSpace& space);

struct PopulationTrace {
    std::vector<double> times;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> probabilities;  // [label][sample]
    std::vector<double> norm;
    std::vector<double> parity;                       // ⟨ψ|Π|ψ⟩
    std::vector<int> in_kick;                          // 1 for interior kick samples

    std::size_t size() const noexcept { return times.size(); }
    const std::vector<double>& column(const std::string& label) const;
};

enum class KickMode {
    kicked,  // apply P during each τ_P interval
    free,    // no kicks: H_R keeps acting during τ_P as well
};

struct TraceOptions {
    int samples_per_interval{8};
    int samples_per_kick{4};
    KickMode mode{KickMode::kicked};
    double leakage_threshold{1e-8};
};

// Combined population of the two highest Fock levels.
double top_fock_population(const StateVector& psi, const HilbertSpace& space);

// Throws TruncationLeakage when top_fock_population exceeds the threshold.
void check_leakage(const StateVector& psi, const HilbertSpace& space, double time, double threshold);

PopulationTrace evolve_trace(const ModelOperators<double>& model, const KickSchedule& schedule,
                             const StateVector& initial, const std::vector<Projector>& projectors,
                             const TraceOptions& options = {});

}  // namespace kickrabi
