#ifndef CVREP_CLI_HPP
#define CVREP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cvrep {

/// Exit codes shared by every subcommand.
enum ExitCode { exit_ok = 0, exit_fails = 1, exit_usage = 2, exit_unreachable = 3 };

/// Entry point of the command-line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Bisection for the smallest r with min_i F_i(r) >= target on [0, r_max].
struct ThresholdResult {
    bool reachable = false;
    double r_star = 0;
    double fidelity = 0;
};
/// The default r_max stays inside the range where double precision tracks
/// squeezed covariances (entries grow like e^{2r}).
ThresholdResult find_threshold(double target, double r_max = 8, double tolerance = 1e-9);

}  // namespace cvrep

#endif
