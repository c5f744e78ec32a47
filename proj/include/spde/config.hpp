#pragma once

#include "spde/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spde {

/// Everything a command run depends on. Seeds are mandatory: a config
/// without one is rejected rather than falling back to the clock.
struct RunConfig {
    StableParams params;
    bool beta_explicit = false;  // otherwise beta = midpoint of (1-H, gamma)

    std::string sigma_src = "sin(x)";
    std::string u0_src = "exp(-x^2)";
    double sigma_sup = 1.0;

    double t_max = 1.0;
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t n_time = 17;
    std::size_t n_x = 9;

    std::vector<std::size_t> n_atoms = {16, 64, 256};
    std::size_t replications = 2000;
    std::optional<std::uint64_t> seed;

    double tol = 1e-9;
    std::optional<double> theta;          // holder exponent
    std::vector<double> lambdas = {0.5, 1.0, 2.0};
    std::string route = "series";         // series | fracint | both
    std::size_t workers = 1;
    std::size_t fracint_grid = 1025;
    std::string out_path;                 // empty = stdout

    // Cross-field invariants; throws parameter_error with a one-line message.
    void validate() const;

    // The beta actually used by solvers.
    double effective_beta() const {
        return beta_explicit ? params.beta
                             : StableParams::default_beta(params.hurst, params.gamma);
    }
};

// Flat key=value file, '#' comments, one pair per line. Unknown keys are
// errors. Applies values onto `config` in file order.
void apply_config_file(RunConfig& config, const std::string& path);

// Applies one key=value pair (shared by the file reader and tests).
void apply_config_pair(RunConfig& config, const std::string& key,
                       const std::string& value);

std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace spde
