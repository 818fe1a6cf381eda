// validation.cpp — Structural invariant suite

#include "kickrabi/validation.hpp"

#include "kickrabi/analysis.hpp"
#include "kickrabi/dynamics.hpp"
#include "kickrabi/model.hpp"
#include "kickrabi/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace kickrabi {

namespace {

using namespace std::complex_literals;

// Worst deviation of the closed-form doublets from a numerical eigensolve of
// the matching 2×2 block of H_JC. Eigenvectors are compared up to sign.
double dressed_state_deviation(const SystemParams& params, const HilbertSpace& space,
                               const OperatorMatrix& h_jc) {
    double worst = 0.0;
    for (int n = 1; n <= space.n_max() - 1; ++n) {
        const auto ie = space.index(Atom::e, n - 1);
        const auto ig = space.index(Atom::g, n);
        Eigen::Matrix2d block;
        block << h_jc(ie, ie).real(), h_jc(ie, ig).real(), h_jc(ig, ie).real(), h_jc(ig, ig).real();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(block);
        const auto doublet = dressed_doublet(params, n);

        worst = std::max(worst, std::abs(solver.eigenvalues()(1) - doublet.energy_plus));
        worst = std::max(worst, std::abs(solver.eigenvalues()(0) - doublet.energy_minus));
        if (doublet.energy_plus - doublet.energy_minus < 1e-6) {
            continue;  // eigenvectors of a (near-)degenerate block are not unique
        }
        const Eigen::Vector2d vp = solver.eigenvectors().col(1);
        const Eigen::Vector2d vm = solver.eigenvectors().col(0);
        worst = std::max(worst, 1.0 - std::abs(vp.dot(doublet.block_plus)));
        worst = std::max(worst, 1.0 - std::abs(vm.dot(doublet.block_minus)));
    }
    return worst;
}

}  // namespace

std::vector<CheckResult> run_structural_checks(const CheckOptions& options) {
    std::vector<CheckResult> results{
        {"unitarity (trace norm and U(NT))", 0.0, 1e-10},
        {"parity conservation", 0.0, 1e-10},
        {"P^2 = i*Pi", 0.0, 1e-12},
        {"P^dag H_R P = H_JC - H_V", 0.0, 1e-12},
        {"[H_R, Pi] = 0", 0.0, 1e-12},
        {"epsilon closed form vs commutator", 0.0, 1e-10},
        {"dressed states vs eigensolve", 0.0, 1e-10},
        {"two-kick factorization of U(NT)", 0.0, 1e-9},
    };
    auto update = [&](std::size_t k, double value) {
        results[k].worst = std::max(results[k].worst, value);
    };

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> omega_dist(0.8, 1.2);
    std::uniform_real_distribution<double> lambda_dist(0.0, 1.0);
    std::uniform_real_distribution<double> tau_i_dist(0.05, 1.0);
    std::uniform_real_distribution<double> tau_p_dist(0.0, 1.0);
    std::normal_distribution<double> amplitude(0.0, 1.0);

    const HilbertSpace space(options.n_max);
    for (int draw = 0; draw < options.draws; ++draw) {
        const SystemParams params{omega_dist(rng), 1.0, lambda_dist(rng)};
        const KickSchedule schedule{tau_i_dist(rng), tau_p_dist(rng), options.kicks};
        const auto model = build_model<double>(params, space);

        // Mixed-parity initial state on the lowest Fock levels.
        StateVector psi0 = StateVector::Zero(space.dim());
        for (Eigen::Index i = 0; i < 8; ++i) {
            psi0(i) = std::complex<double>(amplitude(rng), amplitude(rng));
        }
        psi0.normalize();

        // The invariants are exact identities of the truncated operators, so
        // the leakage guard is off: some random kick trains pump the field
        // without bound and no finite n_max would satisfy it.
        TraceOptions trace_options;
        trace_options.leakage_threshold = std::numeric_limits<double>::infinity();
        const auto trace = evolve_trace(model, schedule, psi0, {}, trace_options);
        double norm_dev = 0.0, parity_dev = 0.0;
        for (std::size_t k = 0; k < trace.size(); ++k) {
            norm_dev = std::max(norm_dev, std::abs(trace.norm[k] - 1.0));
            parity_dev = std::max(parity_dev, std::abs(trace.parity[k] - trace.parity[0]));
        }
        update(0, norm_dev);
        update(0, unitarity_error(kicked_evolution(model, schedule)));
        update(1, parity_dev);

        update(2, max_abs_difference(model.kick * model.kick, OperatorMatrix(1.0i * model.parity)));
        update(3, max_abs_difference(OperatorMatrix(model.kick.adjoint() * model.h_rabi * model.kick),
                                     OperatorMatrix(model.h_jc - model.h_v)));
        update(4, (model.h_rabi * model.parity - model.parity * model.h_rabi).cwiseAbs().maxCoeff());
        update(5, epsilon_operator(params, schedule.tau_i, space).interior_residual());
        update(6, dressed_state_deviation(params, space, model.h_jc));
        update(7, decoupling_factorization_residual(model, schedule.tau_i, 2 * (1 + draw % 5)));
    }
    return results;
}

}  // namespace kickrabi
