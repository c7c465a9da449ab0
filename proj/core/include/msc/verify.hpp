#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msc/matrix.hpp"
#include "msc/protocol.hpp"
#include "msc/rng.hpp"

namespace msc {

// One randomized property suite's tally. `worst` is the suite's deviation
// metric (documented per suite in verify.cpp); `note` holds the first
// failure's description.
struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst = 0.0;
    std::string note;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool passed() const;
};

// Runs every randomized invariant suite from one master seed: spectral
// structure counts, edge-form spectrum matching, conservation of the
// consensus point, Lyapunov monotonicity, limit agreement for both
// integrator orders, the scalar-consensus reduction oracle, and the
// quadratic Hurwitz-test oracle. Identical seeds give identical reports,
// byte for byte.
VerifyReport run_verification(std::uint64_t seed);

std::string format_report(const VerifyReport& report);

// Corpus helpers, shared with the test binaries.

// Definite matrix of random style (scaled identity, rotation, or an
// asymmetric diagonally dominant draw), negated with probability 1/2.
Matrix random_definite_matrix(std::size_t d, SplitMix64& rng);

// Connected system with n in [2,6], d in {2,3}, mixed-sign scalings.
MscSystem random_system(SplitMix64& rng);

Vec random_state(std::size_t size, double range, SplitMix64& rng);

}  // namespace msc
