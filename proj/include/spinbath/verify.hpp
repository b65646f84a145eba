// verify.hpp — self-check suite driving the oracle module; used by the CLI
// `verify` subcommand and reusable from tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinbath::verify {

enum class Level { quick, full };

struct Check {
    std::string name;
    double max_deviation{0.0};
    double tolerance{0.0};
    bool pass{false};
};

struct Report {
    std::uint64_t seed{0}; // seed of the randomized sweeps, for replay
    std::vector<Check> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

Report run(Level level);

} // namespace spinbath::verify
