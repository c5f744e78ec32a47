// stable-spde: simulation and experiment harness for heat equations driven
// by harmonizable fractional stable noise.

#include "spde/commands.hpp"
#include "spde/config.hpp"
#include "spde/errors.hpp"
#include "spde/expr.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

struct FlagValues {
    double alpha = 0, hurst = 0, eta = 0, gamma = 0, beta = 0;
    std::string sigma, u0;
    double sigma_sup = 0;
    double t_max = 0, x_min = 0, x_max = 0;
    std::uint64_t n_time = 0, n_x = 0;
    std::string n_atoms, lambdas;
    std::uint64_t replications = 0, seed = 0, workers = 0, fracint_grid = 0;
    double tol = 0, theta = 0;
    std::string out, config_file, route;
};

void add_common_options(CLI::App* cmd, FlagValues& v) {
    cmd->add_option("--alpha", v.alpha, "stability index in (1,2)");
    cmd->add_option("--hurst", v.hurst, "Hurst parameter in (1/2,1)");
    cmd->add_option("--eta", v.eta, "spectral density shape, > 0");
    cmd->add_option("--gamma", v.gamma, "Holder order of sigma, in (1/2,1)");
    cmd->add_option("--beta", v.beta, "fractional order in (1-hurst, gamma)");
    cmd->add_option("--sigma", v.sigma, "coefficient sigma(t,x), expression");
    cmd->add_option("--u0", v.u0, "initial condition U0(x), expression");
    cmd->add_option("--sigma-sup", v.sigma_sup, "declared bound on |sigma|");
    cmd->add_option("--t-max", v.t_max, "time horizon");
    cmd->add_option("--x-min", v.x_min, "left edge of the space grid");
    cmd->add_option("--x-max", v.x_max, "right edge of the space grid");
    cmd->add_option("--n-time", v.n_time, "time grid points (>= 2)");
    cmd->add_option("--n-x", v.n_x, "space grid points (>= 2)");
    cmd->add_option("--n-atoms", v.n_atoms, "truncation levels, comma separated");
    cmd->add_option("--replications", v.replications, "Monte Carlo replications");
    cmd->add_option("--seed", v.seed, "master seed (required, no default)");
    cmd->add_option("--tol", v.tol, "base numerical tolerance");
    cmd->add_option("--theta", v.theta, "Holder exponent for the holder command");
    cmd->add_option("--lambdas", v.lambdas, "frequencies for charfn, comma separated");
    cmd->add_option("--out", v.out, "output CSV path (default stdout)");
    cmd->add_option("--config", v.config_file, "key=value config file");
    cmd->add_option("--workers", v.workers, "worker threads");
    cmd->add_option("--route", v.route, "solution route: series, fracint or both");
    cmd->add_option("--fracint-grid", v.fracint_grid, "path grid for the fracint route");
}

// Flags override config-file values, which override defaults.
spde::RunConfig assemble(const CLI::App* cmd, const FlagValues& v) {
    spde::RunConfig cfg;
    if (cmd->count("--config")) spde::apply_config_file(cfg, v.config_file);
    auto maybe = [&](const char* flag, auto&& apply) {
        if (cmd->count(flag)) apply();
    };
    maybe("--alpha", [&] { cfg.params.alpha = v.alpha; });
    maybe("--hurst", [&] { cfg.params.hurst = v.hurst; });
    maybe("--eta", [&] { cfg.params.eta = v.eta; });
    maybe("--gamma", [&] { cfg.params.gamma = v.gamma; });
    maybe("--beta", [&] {
        cfg.params.beta = v.beta;
        cfg.beta_explicit = true;
    });
    maybe("--sigma", [&] { cfg.sigma_src = v.sigma; });
    maybe("--u0", [&] { cfg.u0_src = v.u0; });
    maybe("--sigma-sup", [&] { cfg.sigma_sup = v.sigma_sup; });
    maybe("--t-max", [&] { cfg.t_max = v.t_max; });
    maybe("--x-min", [&] { cfg.x_min = v.x_min; });
    maybe("--x-max", [&] { cfg.x_max = v.x_max; });
    maybe("--n-time", [&] { cfg.n_time = v.n_time; });
    maybe("--n-x", [&] { cfg.n_x = v.n_x; });
    maybe("--n-atoms", [&] { cfg.n_atoms = spde::parse_size_list(v.n_atoms); });
    maybe("--replications", [&] { cfg.replications = v.replications; });
    maybe("--seed", [&] { cfg.seed = v.seed; });
    maybe("--tol", [&] { cfg.tol = v.tol; });
    maybe("--theta", [&] { cfg.theta = v.theta; });
    maybe("--lambdas", [&] { cfg.lambdas = spde::parse_double_list(v.lambdas); });
    maybe("--out", [&] { cfg.out_path = v.out; });
    maybe("--workers", [&] { cfg.workers = v.workers; });
    maybe("--route", [&] { cfg.route = v.route; });
    maybe("--fracint-grid", [&] { cfg.fracint_grid = v.fracint_grid; });
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulate harmonizable fractional stable noise and solutions "
                 "of the heat equation it drives"};
    app.require_subcommand(1);

    FlagValues values;
    CLI::App* sample = app.add_subcommand("sample-path", "sample Z_N on a time grid");
    CLI::App* charfn = app.add_subcommand(
        "charfn", "empirical characteristic function of replicated Z_N(t)");
    CLI::App* solve = app.add_subcommand("solve", "evaluate U_N on a (t,x) grid");
    CLI::App* converge =
        app.add_subcommand("converge", "truncation error against the largest N");
    CLI::App* holder =
        app.add_subcommand("holder", "Holder quotients of Z_N across N");
    for (CLI::App* sub : {sample, charfn, solve, converge, holder}) {
        add_common_options(sub, values);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const CLI::App* active = app.get_subcommands().front();
        const spde::RunConfig cfg = assemble(active, values);
        if (active == sample) {
            spde::cmd_sample_path(cfg);
        } else if (active == charfn) {
            spde::cmd_charfn(cfg);
        } else if (active == solve) {
            spde::cmd_solve(cfg);
        } else if (active == converge) {
            spde::cmd_converge(cfg);
        } else {
            spde::cmd_holder(cfg);
        }
    } catch (const spde::parameter_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const spde::expr::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const spde::expr::eval_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const spde::numerics_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const spde::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
