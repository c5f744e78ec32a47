#include "spde/commands.hpp"

#include "spde/atoms.hpp"
#include "spde/csv.hpp"
#include "spde/errors.hpp"
#include "spde/heat.hpp"
#include "spde/rng.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace spde {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(n - 1));
    }
    return out;
}

StableParams effective_params(const RunConfig& config) {
    StableParams p = config.params;
    if (!config.beta_explicit) {
        p.beta = StableParams::default_beta(p.hurst, p.gamma);
    }
    return p;
}

CoefficientSpec build_coefficients(const RunConfig& config) {
    CoefficientSpec spec = make_coefficient_spec(config.sigma_src, config.u0_src,
                                                 config.params.gamma, config.sigma_sup);
    Domain domain{0.0, config.t_max, config.x_min, config.x_max};
    validate_coefficient_spec(spec, domain);
    return spec;
}

std::string fmt(double v) { return csv::format_double(v); }

}  // namespace

double holder_quotient(const Path& path, double theta) {
    if (path.grid.size() < 2) {
        throw parameter_error("holder_quotient: path needs at least 2 points");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw parameter_error("holder_quotient: theta must lie in (0,1)");
    }
    const std::size_t n = path.grid.size();
    const std::size_t window = n <= 4096 ? n : 4096;
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t j_end = std::min(n, i + 1 + window);
        for (std::size_t j = i + 1; j < j_end; ++j) {
            const double dv = std::abs(path.values[j] - path.values[i]);
            const double dt = path.grid[j] - path.grid[i];
            const double q = dv / std::pow(dt, theta);
            if (q > best) best = q;
        }
    }
    return best;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

void cmd_sample_path(const RunConfig& config) {
    config.validate();
    const StableParams params = effective_params(config);
    const std::size_t n_max = config.n_atoms.back();
    const AtomSequence atoms = generate_atoms(n_max, params, *config.seed);
    const SeriesEvaluator eval(atoms, params);
    const std::vector<double> grid = linspace(0.0, config.t_max, config.n_time);

    // One pass over the atoms per time, recording the running sum at each
    // requested truncation level.
    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(grid.size(), config.workers, [&](std::size_t i) {
        std::vector<double> z;
        z.reserve(config.n_atoms.size());
        double acc = 0.0;
        std::size_t k = 1;
        for (std::size_t n : config.n_atoms) {
            for (; k <= n; ++k) acc += eval.increment(grid[i], k);
            z.push_back(acc);
        }
        rows[i] = std::move(z);
    });

    csv::Writer out(config.out_path);
    std::vector<std::string> header{"t"};
    for (std::size_t n : config.n_atoms) header.push_back("z_" + std::to_string(n));
    out.row(header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> fields{fmt(grid[i])};
        for (double v : rows[i]) fields.push_back(fmt(v));
        out.row(fields);
    }
    out.close();
}

void cmd_charfn(const RunConfig& config) {
    config.validate();
    if (config.replications < 100) {
        throw parameter_error("charfn: replications must be >= 100");
    }
    const StableParams params = effective_params(config);
    const double t = config.t_max;
    const std::size_t n_atoms = config.n_atoms.back();

    std::vector<double> samples(config.replications);
    parallel_for(config.replications, config.workers, [&](std::size_t j) {
        const std::uint64_t rep_seed = rng::replication_seed(*config.seed, j);
        const AtomSequence atoms = generate_atoms(n_atoms, params, rep_seed);
        samples[j] = evaluate_ZN(t, atoms, n_atoms, params);
    });

    const double scale_alpha = scale_parameter(t, params, config.tol);

    csv::Writer out(config.out_path);
    out.row({"lambda", "ecf_re", "ecf_im", "theory", "abs_error"});
    for (double lambda : config.lambdas) {
        const std::complex<double> ecf = empirical_char_function(samples, lambda);
        const double theory =
            std::exp(-scale_alpha * std::pow(std::abs(lambda), params.alpha));
        const double err = std::abs(ecf - std::complex<double>(theory, 0.0));
        out.row({fmt(lambda), fmt(ecf.real()), fmt(ecf.imag()), fmt(theory), fmt(err)});
    }
    out.close();
}

void cmd_solve(const RunConfig& config) {
    config.validate();
    const StableParams params = effective_params(config);
    const CoefficientSpec spec = build_coefficients(config);
    const std::size_t n = config.n_atoms.back();
    const AtomSequence atoms = generate_atoms(n, params, *config.seed);
    const std::vector<double> times = linspace(0.0, config.t_max, config.n_time);
    const std::vector<double> xs = linspace(config.x_min, config.x_max, config.n_x);
    const bool want_series = config.route == "series" || config.route == "both";
    const bool want_fracint = config.route == "fracint" || config.route == "both";

    FracintOptions fopt;
    fopt.grid_points = config.fracint_grid;

    const std::size_t cells = times.size() * xs.size();
    std::vector<double> u_series(cells, 0.0), u_fracint(cells, 0.0);
    parallel_for(cells, config.workers, [&](std::size_t c) {
        const double t = times[c / xs.size()];
        const double x = xs[c % xs.size()];
        if (t == 0.0) {
            // semigroup limit: the t = 0 row carries U_0 itself
            const double v = spec.u0_eval(x);
            u_series[c] = v;
            u_fracint[c] = v;
            return;
        }
        if (want_series) {
            u_series[c] = mild_solution_series(t, x, atoms, n, spec, params);
        }
        if (want_fracint) {
            u_fracint[c] = mild_solution_fracint(t, x, atoms, n, spec, params,
                                                 config.effective_beta(), fopt);
        }
    });

    csv::Writer out(config.out_path);
    std::vector<std::string> header{"t", "x"};
    if (want_series) header.push_back("u_series");
    if (want_fracint) header.push_back("u_fracint");
    if (want_series && want_fracint) header.push_back("abs_diff");
    out.row(header);
    for (std::size_t c = 0; c < cells; ++c) {
        std::vector<std::string> fields{fmt(times[c / xs.size()]), fmt(xs[c % xs.size()])};
        if (want_series) fields.push_back(fmt(u_series[c]));
        if (want_fracint) fields.push_back(fmt(u_fracint[c]));
        if (want_series && want_fracint) {
            fields.push_back(fmt(std::abs(u_series[c] - u_fracint[c])));
        }
        out.row(fields);
    }
    out.close();
}

void cmd_converge(const RunConfig& config) {
    config.validate();
    if (config.n_atoms.size() < 3) {
        throw parameter_error("converge: n_atoms must list at least 3 levels");
    }
    const StableParams params = effective_params(config);
    const CoefficientSpec spec = build_coefficients(config);
    const std::size_t n_ref = config.n_atoms.back();
    const AtomSequence atoms = generate_atoms(n_ref, params, *config.seed);
    const std::vector<double> times = linspace(0.0, config.t_max, config.n_time);
    const std::vector<double> xs = linspace(config.x_min, config.x_max, config.n_x);

    const std::size_t cells = times.size() * xs.size();
    std::vector<std::vector<double>> per_cell(cells);
    parallel_for(cells, config.workers, [&](std::size_t c) {
        const double t = times[c / xs.size()];
        const double x = xs[c % xs.size()];
        if (t == 0.0) {
            per_cell[c].assign(config.n_atoms.size(), spec.u0_eval(x));
            return;
        }
        MildSeries series(t, x, spec, params);
        per_cell[c] = series.solutions(atoms, config.n_atoms);
    });

    csv::Writer out(config.out_path);
    out.row({"N", "sup_abs_error"});
    for (std::size_t ni = 0; ni < config.n_atoms.size(); ++ni) {
        double sup = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            sup = std::max(sup, std::abs(per_cell[c][ni] - per_cell[c].back()));
        }
        out.row({std::to_string(config.n_atoms[ni]), fmt(sup)});
    }
    out.close();
}

void cmd_holder(const RunConfig& config) {
    config.validate();
    if (!config.theta.has_value()) {
        throw parameter_error("holder: theta is required");
    }
    const double theta = *config.theta;
    const StableParams params = effective_params(config);
    if (theta >= params.hurst) {
        std::cerr << "warning: theta = " << theta << " is >= hurst = "
                  << params.hurst << "; no uniform bound is expected there\n";
    }
    const std::size_t n_max = config.n_atoms.back();
    const AtomSequence atoms = generate_atoms(n_max, params, *config.seed);
    const std::vector<double> grid = linspace(0.0, config.t_max, config.n_time);

    std::vector<double> quotients(config.n_atoms.size());
    parallel_for(config.n_atoms.size(), config.workers, [&](std::size_t i) {
        const Path path = sample_path(grid, atoms, config.n_atoms[i], params);
        quotients[i] = holder_quotient(path, theta);
    });

    csv::Writer out(config.out_path);
    out.row({"N", "theta", "holder_quotient"});
    for (std::size_t i = 0; i < config.n_atoms.size(); ++i) {
        out.row({std::to_string(config.n_atoms[i]), fmt(theta), fmt(quotients[i])});
    }
    out.close();
}

}  // namespace spde
