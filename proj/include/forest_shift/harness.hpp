#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "forest_shift/forest.hpp"
#include "forest_shift/weights.hpp"

namespace fshift {

enum class Family { forkless, forked, degenerate };

std::string to_string(Family family);
Family parse_family(const std::string& name);

struct HarnessSpec {
    Family family = Family::forkless;
    std::size_t samples = 10;
    std::uint64_t seed = 1;
    std::uint64_t max_power = 4;
    std::size_t weights_per_forest = 20;
    /// Restrict to proper shifts (leafless forkless forests, no zero weights).
    bool proper_only = false;
    double tol = 1e-9;
};

struct HarnessSummary {
    HarnessSpec spec;
    std::size_t forests = 0;
    std::size_t weight_systems = 0;
    std::size_t counterexamples = 0;
    std::size_t falsifications = 0;
    std::vector<std::string> events;

    bool passed() const { return falsifications == 0; }
};

/// Samples the family, checks the power-hyponormality dichotomy on each
/// forest and records every falsification. Deterministic for a given seed.
HarnessSummary theorem_harness(const HarnessSpec& spec);

/// Random forest whose leafless support is forkless. With `leafless` set the
/// forest is itself leafless and forkless.
Forest random_forkless_support_forest(std::mt19937_64& rng, bool leafless = false);

/// Random forest whose leafless support has a fork.
Forest random_forked_support_forest(std::mt19937_64& rng);

/// Random hyponormal weights on a forest with forkless leafless support,
/// exact rationals throughout. `proper` forbids zero weights off the roots.
WeightSystem random_hyponormal_weights(const Forest& f, std::mt19937_64& rng, bool proper = false);

} // namespace fshift
