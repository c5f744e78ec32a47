#include "spde/config.hpp"

#include "spde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spde {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw parameter_error("config: " + key + ": not a number: '" + value + "'");
    }
    if (pos != value.size() || !std::isfinite(v)) {
        throw parameter_error("config: " + key + ": not a finite number: '" + value + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    // stoull wraps negatives around instead of failing
    const bool negative = value.find('-') != std::string::npos;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (negative || pos != value.size()) {
        throw parameter_error("config: " + key + ": not a nonnegative integer: '" + value + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw parameter_error("config: empty entry in integer list");
        out.push_back(static_cast<std::size_t>(parse_u64("list", item)));
    }
    if (out.empty()) throw parameter_error("config: empty integer list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw parameter_error("config: empty entry in number list");
        out.push_back(parse_double("list", item));
    }
    if (out.empty()) throw parameter_error("config: empty number list");
    return out;
}

void apply_config_pair(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "alpha") {
        c.params.alpha = parse_double(key, value);
    } else if (key == "hurst") {
        c.params.hurst = parse_double(key, value);
    } else if (key == "eta") {
        c.params.eta = parse_double(key, value);
    } else if (key == "gamma") {
        c.params.gamma = parse_double(key, value);
    } else if (key == "beta") {
        c.params.beta = parse_double(key, value);
        c.beta_explicit = true;
    } else if (key == "sigma") {
        c.sigma_src = value;
    } else if (key == "u0") {
        c.u0_src = value;
    } else if (key == "sigma_sup") {
        c.sigma_sup = parse_double(key, value);
    } else if (key == "t_max") {
        c.t_max = parse_double(key, value);
    } else if (key == "x_min") {
        c.x_min = parse_double(key, value);
    } else if (key == "x_max") {
        c.x_max = parse_double(key, value);
    } else if (key == "n_time") {
        c.n_time = parse_u64(key, value);
    } else if (key == "n_x") {
        c.n_x = parse_u64(key, value);
    } else if (key == "n_atoms") {
        c.n_atoms = parse_size_list(value);
    } else if (key == "replications") {
        c.replications = parse_u64(key, value);
    } else if (key == "seed") {
        c.seed = parse_u64(key, value);
    } else if (key == "tol") {
        c.tol = parse_double(key, value);
    } else if (key == "theta") {
        c.theta = parse_double(key, value);
    } else if (key == "lambdas") {
        c.lambdas = parse_double_list(value);
    } else if (key == "route") {
        c.route = value;
    } else if (key == "workers") {
        c.workers = parse_u64(key, value);
    } else if (key == "fracint_grid") {
        c.fracint_grid = parse_u64(key, value);
    } else if (key == "out") {
        c.out_path = value;
    } else {
        throw parameter_error("config: unknown key '" + key + "'");
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config: " << path << ":" << lineno << ": expected key=value";
            throw parameter_error(msg.str());
        }
        apply_config_pair(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void RunConfig::validate() const {
    if (!seed.has_value()) {
        throw parameter_error("config: seed is required; there is no wall-clock default");
    }
    StableParams p = params;
    if (!beta_explicit) p.beta = StableParams::default_beta(p.hurst, p.gamma);
    p.validate();
    if (!(t_max > 0.0)) throw parameter_error("config: t_max must be positive");
    if (!(x_min < x_max)) throw parameter_error("config: requires x_min < x_max");
    if (n_time < 2) throw parameter_error("config: n_time must be >= 2");
    if (n_x < 2) throw parameter_error("config: n_x must be >= 2");
    if (n_atoms.empty()) throw parameter_error("config: n_atoms must be nonempty");
    if (!std::is_sorted(n_atoms.begin(), n_atoms.end()) ||
        std::adjacent_find(n_atoms.begin(), n_atoms.end()) != n_atoms.end()) {
        throw parameter_error("config: n_atoms must be strictly increasing");
    }
    if (!(tol > 0.0)) throw parameter_error("config: tol must be positive");
    if (route != "series" && route != "fracint" && route != "both") {
        throw parameter_error("config: route must be series, fracint or both");
    }
    if (workers == 0) throw parameter_error("config: workers must be >= 1");
    if (fracint_grid < 2) throw parameter_error("config: fracint_grid must be >= 2");
    if (!(sigma_sup > 0.0)) throw parameter_error("config: sigma_sup must be positive");
}

}  // namespace spde
