// validation.hpp — Structural invariant suite over randomized parameter draws

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kickrabi {

struct CheckResult {
    std::string name;
    double worst{0.0};      // largest observed deviation across draws
    double tolerance{0.0};
    bool passed() const noexcept { return worst <= tolerance; }
};

struct CheckOptions {
    std::uint64_t seed{20140611};
    int draws{10};
    int n_max{30};
    int kicks{40};
};

// Draws ω₀ ∈ [0.8, 1.2], λ₀ ∈ [0, 1], τ_I ∈ [0.05, 1], τ_P ∈ [0, 1] (ω_c = 1) and
// checks unitarity, parity conservation, P² = iΠ, P†H_RP = H_JC − H_V,
// [H_R, Π] = 0, ε̂ closed form vs commutator, dressed states vs eigensolve and
// the two-kick factorization of U(NT).
std::vector<CheckResult> run_structural_checks(const CheckOptions& options = {});

}  // namespace kickrabi
