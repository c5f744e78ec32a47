#include "spde/atoms.hpp"

#include "spde/errors.hpp"

#include <cmath>
#include <limits>

namespace spde {

std::vector<double> sample_arrival_times(std::size_t n, const rng::CounterStream& s) {
    std::vector<double> gammas;
    gammas.reserve(n);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += -std::log(s.open01(k));  // open01 < 1, so the increment is > 0
        gammas.push_back(acc);
    }
    return gammas;
}

XiSample sample_xi(std::size_t n, double eta, const rng::CounterStream& s) {
    if (!(eta > 0.0)) throw parameter_error("sample_xi: eta must be positive");
    XiSample out;
    out.values.reserve(n);
    out.log_abs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t b = s.bits(2 * k);
        const double sign_x = (b & 1u) ? 1.0 : -1.0;
        const double sign_u = (b & 2u) ? 1.0 : -1.0;
        const double u01 = s.open01(2 * k + 1);
        const double log_abs = xi_log_abs_from_uniform(sign_u, u01, eta);
        out.log_abs.push_back(log_abs);
        // |xi| can fall below the subnormal range (log-Pareto tails); clamp
        // the stored value to the smallest nonzero double. log_abs stays
        // exact, and it is what every downstream power uses.
        const double mag =
            std::max(std::exp(log_abs), std::numeric_limits<double>::denorm_min());
        out.values.push_back(sign_x * mag);
    }
    return out;
}

std::vector<std::complex<double>> sample_gaussians(std::size_t n, double alpha,
                                                   const rng::CounterStream& s) {
    const double scale = gaussian_half_scale(alpha);
    std::vector<std::complex<double>> gs;
    gs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u1 = s.open01(2 * k);
        const double u2 = s.open01(2 * k + 1);
        const double r = scale * std::sqrt(-2.0 * std::log(u1));
        gs.emplace_back(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    }
    return gs;
}

AtomSequence generate_atoms(std::size_t n, const StableParams& params,
                            std::uint64_t seed) {
    params.validate();
    AtomSequence atoms = generate_atoms_from_streams(
        n, params, rng::CounterStream(seed, rng::kArrivalDomain),
        rng::CounterStream(seed, rng::kSpectralDomain),
        rng::CounterStream(seed, rng::kGaussianDomain));
    atoms.seed = seed;
    return atoms;
}

AtomSequence generate_atoms_from_streams(std::size_t n, const StableParams& params,
                                         const rng::CounterStream& arrivals,
                                         const rng::CounterStream& spectral,
                                         const rng::CounterStream& gaussians) {
    params.validate();
    AtomSequence atoms;
    atoms.count = n;
    atoms.gammas = sample_arrival_times(n, arrivals);
    XiSample xi = sample_xi(n, params.eta, spectral);
    atoms.xis = std::move(xi.values);
    atoms.log_abs_xis = std::move(xi.log_abs);
    atoms.gs = sample_gaussians(n, params.alpha, gaussians);
    return atoms;
}

}  // namespace spde
