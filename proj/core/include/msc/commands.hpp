#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace msc {

// Command bodies behind the CLI, exposed as library calls so tests can
// drive them without spawning processes. Each returns the process exit
// code: 0 success (including NotConverged simulations), 2 validation or
// configuration error, 3 Diverged simulation verdict, 4 verification or
// sweep-consistency failure.

int cmd_analyze(const std::string& scenario_path, std::ostream& out, std::ostream& err);

int cmd_simulate(const std::string& scenario_path, const std::string& output_dir,
                 std::ostream& out, std::ostream& err);

int cmd_sweep_alpha(const std::string& scenario_path, const std::vector<double>& alphas,
                    std::ostream& out, std::ostream& err);

int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream& err);

}  // namespace msc
