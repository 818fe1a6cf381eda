// test_dynamics.cpp — Propagators, kicked sequences and sampled traces

#include "kickrabi/analysis.hpp"
#include "kickrabi/dynamics.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

using namespace kickrabi;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

const SystemParams kFig2{1.0, 1.0, 0.06};
const SystemParams kStrong{1.0, 1.0, 0.5};

KickSchedule fig2_schedule(int n_kicks = 54) {
    return KickSchedule{resonance_tau(kFig2, Branch::minus, 3), pi / 2.0, n_kicks};
}

PopulationTrace run(const SystemParams& p, int n_max, const KickSchedule& schedule, const std::string& initial,
                    const std::vector<std::string>& labels, TraceOptions options = {}) {
    const auto model = build_model(p, make_space(n_max));
    return evolve_trace(model, schedule, labeled_state(initial, p, model.space),
                        make_projectors(labels, p, model.space), options);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double max_deviation(const PopulationTrace& a, const PopulationTrace& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t j = 0; j < a.labels.size(); ++j) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            worst = std::max(worst, std::abs(a.probabilities[j][i] - b.probabilities[j][i]));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("propagator basics") {
    const auto model = build_model(kStrong, make_space(10));
    CHECK(max_abs_difference(propagator(model.h_rabi, 0.0), identity(model.space)) <= 1e-12);

    const double t1 = 0.7, t2 = 2.3;
    const OperatorMatrix prod = propagator(model.h_rabi, t1) * propagator(model.h_rabi, t2);
    CHECK(max_abs_difference(prod, propagator(model.h_rabi, t1 + t2)) <= 1e-10);
    CHECK(unitarity_error(propagator(model.h_rabi, 37.0)) <= 1e-10);

    // Independent Taylor-series exponential.
    CHECK(max_abs_difference(propagator(model.h_rabi, 3.1), oracle::evolution(model.h_rabi, 3.1)) < 1e-11);

    const auto free = build_model(SystemParams{1.2, 1.0, 0.0}, make_space(4));
    const auto u = propagator(free.h_rabi, 5.0);
    for (Eigen::Index i = 0; i < free.space.dim(); ++i) {
        const double e = free.h_rabi(i, i).real();
        CHECK(std::abs(u(i, i) - std::exp(-1i * e * 5.0)) < 1e-13);
    }
    const OperatorMatrix off_diag = u - OperatorMatrix(u.diagonal().asDiagonal());
    CHECK(off_diag.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("propagator rejects bad generators") {
    OperatorMatrix h = OperatorMatrix::Zero(2, 2);
    h(0, 1) = 1.0;
    CHECK_THROWS_AS(propagator(h, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(propagator(OperatorMatrix(2, 3), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(propagator(OperatorMatrix(0, 0), 1.0), std::invalid_argument);
}

TEST_CASE("long double propagator") {
    const auto model = build_model<long double>(kStrong, make_space(6));
    const auto u = propagator<long double>(model.h_rabi, 1.5L);
    CHECK(unitarity_error(u) < 1e-16L);
    const ComplexMatrix<long double> u2 = propagator<long double>(model.h_rabi, 0.75L);
    CHECK(max_abs_difference(ComplexMatrix<long double>(u2 * u2), u) < 1e-16L);
}

TEST_CASE("KickSchedule") {
    const KickSchedule s{2.0, 0.5, 4};
    CHECK(s.period() == 2.5);
    CHECK(s.duration() == 10.0);
    CHECK_THROWS_AS((KickSchedule{0.0, 0.5, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KickSchedule{1.0, -0.5, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KickSchedule{1.0, 0.5, -1}.validate()), std::invalid_argument);
}

TEST_CASE("kicked step and evolution") {
    const auto model = build_model(kFig2, make_space(20));
    SUBCASE("N = 0 is the identity") {
        CHECK(max_abs_difference(kicked_evolution(model, fig2_schedule(0)), identity(model.space)) == 0.0);
    }
    SUBCASE("one resonant period stays in the two-level subspace") {
        const StateVector psi = kicked_step(model, fig2_schedule(1)) * basis_state(model.space, Atom::g, 0);
        CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const auto d = dressed_doublet(kFig2, 2);
        const double p_g0 = std::norm(psi(model.space.index(Atom::g, 0)));
        const double p_2m = std::norm(d.state(model.space, Branch::minus).dot(psi));
        CHECK(p_g0 + p_2m >= 0.999);
    }
    SUBCASE("two kicks flip the sign of the counter-rotating term") {
        const double tau = 0.37;
        const auto step = kicked_step(model, KickSchedule{tau, 0.0, 1});
        const OperatorMatrix two = step * step;
        const oracle::Matrix ref = 1i * model.parity * oracle::evolution(model.h_jc - model.h_v, tau) *
                                   oracle::evolution(model.h_jc + model.h_v, tau);
        CHECK(max_abs_difference(two, ref) <= 1e-10);
    }
    SUBCASE("evolution equals an oracle product") {
        const KickSchedule s{0.9, 0.0, 7};
        const auto strong = build_model(kStrong, make_space(16));
        const oracle::Matrix step = strong.kick * oracle::evolution(strong.h_rabi, 0.9);
        oracle::Matrix ref = oracle::Matrix::Identity(strong.space.dim(), strong.space.dim());
        for (int k = 0; k < 7; ++k) ref = step * ref;
        CHECK(max_abs_difference(kicked_evolution(strong, s), ref) < 1e-11);
    }
}

TEST_CASE("checked_power guards unitarity") {
    const OperatorMatrix drift = 1.001 * OperatorMatrix::Identity(4, 4);
    CHECK_NOTHROW(checked_power<double>(drift, 63));
    CHECK_THROWS_AS(checked_power<double>(drift, 64), NumericGuard);
    CHECK_THROWS_AS(checked_power<double>(drift, -1), std::invalid_argument);
}

TEST_CASE("labels and projectors") {
    const auto space = make_space(5);
    const auto d = dressed_doublet(kFig2, 2);
    CHECK(max_abs_difference(labeled_state("e,3", kFig2, space), basis_state(space, Atom::e, 3)) == 0.0);
    CHECK(max_abs_difference(labeled_state("2,-", kFig2, space), d.state(space, Branch::minus)) == 0.0);
    CHECK(max_abs_difference(labeled_state("2,+", kFig2, space), d.state(space, Branch::plus)) == 0.0);
    CHECK(make_projector("g,1", kFig2, space).label == "g,1");
    for (const char* bad : {"x,0", "g,", "g,6", "0,+", "6,-", "2,*", "", "g,1,2"}) {
        CHECK_THROWS_AS(make_projector(bad, kFig2, space), std::invalid_argument);
    }
}

TEST_CASE("resonant enhancement trace (fig2 preset)") {
    const auto trace = run(kFig2, 20, fig2_schedule(), "g,0", {"g,0", "2,-"});
    const auto& p2 = trace.column("2,-");
    const auto& g0 = trace.column("g,0");
    const auto it = std::max_element(p2.begin(), p2.end());
    const double t_max = trace.times[static_cast<std::size_t>(it - p2.begin())];
    const double predicted = pi * fig2_schedule().period() / (4.0 * 0.022153078977756386);
    CHECK(*it >= 0.95);
    CHECK(std::abs(t_max - predicted) <= 0.1 * predicted);

    // Invariants on every sample.
    double parity0 = trace.parity.front();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(std::abs(trace.norm[i] - 1.0) <= 1e-10);
        CHECK(std::abs(trace.parity[i] - parity0) <= 1e-10);
        CHECK(1.0 - g0[i] - p2[i] <= 0.02);
        CHECK(g0[i] >= 0.0);
        CHECK(g0[i] <= 1.0 + 1e-10);
        if (i > 0) CHECK(trace.times[i] > trace.times[i - 1]);
    }
    CHECK_THROWS_AS(trace.column("e,0"), std::out_of_range);
}

TEST_CASE("trace sampling layout") {
    TraceOptions options;
    options.samples_per_interval = 3;
    options.samples_per_kick = 2;
    const KickSchedule s{1.0, 0.5, 2};
    const auto trace = run(kStrong, 20, s, "e,0", {"e,0"}, options);
    const std::vector<double> expected{0.0, 1.0 / 3, 2.0 / 3, 1.0, 1.25, 1.5, 1.5 + 1.0 / 3, 1.5 + 2.0 / 3, 2.5, 2.75, 3.0};
    const std::vector<int> flags{0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};
    REQUIRE(trace.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(trace.times[i] == doctest::Approx(expected[i]).epsilon(1e-14));
        CHECK(trace.in_kick[i] == flags[i]);
    }

    // Period endpoints equal the oracle kicked product applied to |e,0⟩.
    const auto model = build_model(kStrong, make_space(20));
    const oracle::Matrix step = model.kick * oracle::evolution(model.h_rabi, 1.0);
    oracle::Matrix psi = basis_state(model.space, Atom::e, 0);
    for (std::size_t end : {std::size_t{5}, std::size_t{10}}) {
        psi = step * psi;
        CHECK(std::abs(trace.column("e,0")[end] - std::norm(psi(1, 0))) < 1e-12);
    }

    // Instantaneous kicks add no samples.
    const auto instant = run(kStrong, 20, KickSchedule{1.0, 0.0, 2}, "e,0", {"e,0"}, options);
    CHECK(instant.size() == 7);
}

TEST_CASE("free mode follows the Rabi Hamiltonian throughout") {
    TraceOptions options;
    options.mode = KickMode::free;
    const KickSchedule s{0.4, 0.3, 5};
    const auto trace = run(kStrong, 24, s, "e,0", {"e,0", "g,1"}, options);
    const auto model = build_model(kStrong, make_space(24));
    const StateVector psi0 = basis_state(model.space, Atom::e, 0);
    for (std::size_t i = 0; i < trace.size(); i += 3) {
        const oracle::Matrix psi = oracle::evolution(model.h_rabi, trace.times[i]) * psi0;
        CHECK(std::abs(trace.column("e,0")[i] - std::norm(psi(1, 0))) < 1e-11);
    }
}

TEST_CASE("kicks are necessary for the resonant transfer") {
    TraceOptions options;
    options.mode = KickMode::free;
    const auto trace = run(kFig2, 20, fig2_schedule(), "g,0", {"2,-"}, options);
    CHECK(max_of(trace.column("2,-")) <= 0.01);
}

TEST_CASE("decoupled atom stays in the ground state") {
    const SystemParams p{1.0, 1.0, 0.0};
    const auto trace = run(p, 6, KickSchedule{0.8, 0.3, 20}, "g,0", {"g,0"});
    for (double v : trace.column("g,0")) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("truncation convergence") {
    SUBCASE("weak coupling, 12 vs 20") {
        const auto a = run(kFig2, 12, fig2_schedule(), "g,0", {"g,0", "2,-", "2,+", "e,1"});
        const auto b = run(kFig2, 20, fig2_schedule(), "g,0", {"g,0", "2,-", "2,+", "e,1"});
        CHECK(max_deviation(a, b) < 1e-6);
    }
    SUBCASE("strong coupling, 24 vs 36") {
        const double tau = pi / 18.0;
        const KickSchedule s{tau, tau, static_cast<int>(std::ceil(100.0 / (2 * tau)))};
        for (const char* initial : {"e,0", "g,0"}) {
            const auto a = run(kStrong, 24, s, initial, {"e,0", "g,0", "g,1"});
            const auto b = run(kStrong, 36, s, initial, {"e,0", "g,0", "g,1"});
            CHECK(max_deviation(a, b) < 1e-4);
        }
    }
}

TEST_CASE("traces are bit-reproducible") {
    const auto a = run(kStrong, 24, KickSchedule{0.3, 0.2, 30}, "e,0", {"e,0", "g,1"});
    const auto b = run(kStrong, 24, KickSchedule{0.3, 0.2, 30}, "e,0", {"e,0", "g,1"});
    CHECK(a.times == b.times);
    CHECK(a.probabilities == b.probabilities);
    CHECK(a.norm == b.norm);
}

TEST_CASE("truncation leakage and input errors") {
    const SystemParams p{1.0, 1.0, 0.9};
    CHECK_THROWS_AS(run(p, 2, KickSchedule{0.5, 0.0, 4}, "e,0", {"e,0"}), TruncationLeakage);
    try {
        run(p, 2, KickSchedule{0.5, 0.0, 4}, "e,0", {"e,0"});
    } catch (const TruncationLeakage& e) {
        CHECK(e.population() > 1e-8);
        CHECK(e.time() > 0.0);
    }

    const auto model = build_model(p, make_space(8));
    const auto proj = make_projectors({"e,0"}, p, model.space);
    const StateVector unnormalized = 2.0 * basis_state(model.space, Atom::e, 0);
    CHECK_THROWS_AS(evolve_trace(model, KickSchedule{1.0, 0.0, 1}, unnormalized, proj), std::invalid_argument);
    CHECK_THROWS_AS(evolve_trace(model, KickSchedule{1.0, 0.0, 1}, StateVector::Zero(3), proj),
                    std::invalid_argument);
    TraceOptions bad;
    bad.samples_per_interval = 0;
    CHECK_THROWS_AS(evolve_trace(model, KickSchedule{1.0, 0.0, 1}, basis_state(model.space, Atom::e, 0), proj, bad),
                    std::invalid_argument);
}

TEST_CASE("top Fock population") {
    const auto space = make_space(5);
    StateVector psi = StateVector::Zero(space.dim());
    psi(space.index(Atom::g, 4)) = std::sqrt(0.25);
    psi(space.index(Atom::e, 5)) = std::sqrt(0.25);
    psi(space.index(Atom::e, 3)) = std::sqrt(0.5);
    CHECK(top_fock_population(psi, space) == doctest::Approx(0.5));
    CHECK_THROWS_AS(check_leakage(psi, space, 1.0, 1e-8), TruncationLeakage);
    CHECK_NOTHROW(check_leakage(basis_state(space, Atom::e, 3), space, 1.0, 1e-8));
}
