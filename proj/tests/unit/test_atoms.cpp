#include "spde/atoms.hpp"

#include "spde/errors.hpp"
#include "spde/quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace spde;

namespace {

// Distribution function of the spectral draws. With M = (1-U)^{-1/eta} - 1:
// G(w) = P(sign_u * M <= w) = 1 - (1+w)^{-eta}/2 for w >= 0,
//                             (1+|w|)^{-eta}/2   for w < 0,
// F(x) = 1/2 + sign(x) G(ln|x|) / 2 pieced together by symmetry.
double xi_cdf(double x, double eta) {
    auto g = [eta](double w) {
        return w >= 0.0 ? 1.0 - 0.5 * std::pow(1.0 + w, -eta)
                        : 0.5 * std::pow(1.0 - w, -eta);
    };
    if (x > 0.0) return 0.5 + 0.5 * g(std::log(x));
    return 0.5 - 0.5 * g(std::log(-x));
}

// Independent check of the closed form: integrate density_phi directly in
// log coordinates up from -V with the exact tail antiderivative below -V.
double xi_cdf_by_quadrature(double x, double eta) {
    REQUIRE(x > 0.0);
    const double v_hi = std::log(x);
    double mass =
        normalization_constant(eta) * std::pow(701.0, -eta) / eta;  // v < -700 head
    const double edges[] = {-700.0, -100.0, -10.0, -1.0, 0.0, 5.0, 1e9};
    for (int i = 0; i + 1 < 7 && edges[i] < v_hi; ++i) {
        const double hi = std::min(edges[i + 1], v_hi);
        mass += quad::adaptive_simpson(
            [&](double v) {
                const double y = std::exp(v);
                return density_phi(y, eta) * y;
            },
            edges[i], hi, 1e-12);
    }
    return 0.5 + mass;  // negative half-line carries mass 1/2
}

}  // namespace

TEST_CASE("arrival times: increasing, reproducible, strong law") {
    const rng::CounterStream s(2024, rng::kArrivalDomain);
    const auto g3 = sample_arrival_times(3, s);
    REQUIRE(g3.size() == 3);
    CHECK(g3[0] > 0.0);
    CHECK(g3[1] > g3[0]);
    CHECK(g3[2] > g3[1]);

    CHECK(sample_arrival_times(0, s).empty());

    const auto again = sample_arrival_times(3, s);
    CHECK(g3 == again);

    const std::size_t n = 100000;
    const auto big = sample_arrival_times(n, s);
    CHECK(std::is_sorted(big.begin(), big.end()));
    CHECK(std::abs(big.back() / static_cast<double>(n) - 1.0) <
          4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("spectral draws follow the inverse-CDF construction") {
    // sign_u = +1, U = 1/2, eta = 1: log|xi| = (1/2)^{-1} - 1 = 1, xi = e.
    CHECK(xi_log_abs_from_uniform(1.0, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::exp(xi_log_abs_from_uniform(1.0, 0.5, 1.0)) ==
          doctest::Approx(M_E).epsilon(1e-15));

    const rng::CounterStream s(77, rng::kSpectralDomain);
    const std::size_t n = 100000;
    const XiSample xs = sample_xi(n, 1.0, s);
    REQUIRE(xs.values.size() == n);

    double mean_sign = 0.0;
    for (double v : xs.values) {
        CHECK(v != 0.0);
        mean_sign += v > 0.0 ? 1.0 : -1.0;
    }
    CHECK(std::abs(mean_sign / n) < 0.01);

    // closed-form CDF vs direct quadrature of the density
    for (double x : {0.2, 0.9, 1.0, 2.5, 40.0}) {
        CHECK(xi_cdf(x, 1.0) ==
              doctest::Approx(xi_cdf_by_quadrature(x, 1.0)).epsilon(1e-6));
    }

    // Kolmogorov-Smirnov distance against the analytic CDF
    std::vector<double> sorted = xs.values;
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = xi_cdf(sorted[i], 1.0);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("gaussian marks: moment normalization and rotational symmetry") {
    const rng::CounterStream s(31415, rng::kGaussianDomain);
    const std::size_t n = 1000000;
    const double alpha = 1.5;
    const auto gs = sample_gaussians(n, alpha, s);

    double m0r = 0.0, m0i = 0.0, mom = 0.0, mom2 = 0.0, cross = 0.0, vr = 0.0,
           vi = 0.0;
    for (const auto& g : gs) {
        m0r += g.real();
        m0i += g.imag();
        const double p = std::pow(std::abs(g.real()), alpha);
        mom += p;
        mom2 += p * p;
        cross += g.real() * g.imag();
        vr += g.real() * g.real();
        vi += g.imag() * g.imag();
    }
    const double nn = static_cast<double>(n);
    m0r /= nn;
    m0i /= nn;
    mom /= nn;
    mom2 /= nn;
    const double se_mom = std::sqrt((mom2 - mom * mom) / nn);
    CHECK(std::abs(mom - 1.0) < 3.0 * se_mom);

    const double sd = gaussian_half_scale(alpha);
    CHECK(std::abs(m0r) < 3.0 * sd / std::sqrt(nn));
    CHECK(std::abs(m0i) < 3.0 * sd / std::sqrt(nn));
    const double corr = (cross / nn) / std::sqrt((vr / nn) * (vi / nn));
    CHECK(std::abs(corr) < 3.0 / std::sqrt(nn));
}

TEST_CASE("atom bundles: nesting, determinism, substream independence") {
    StableParams p;
    const auto a10 = generate_atoms(10, p, 9001);
    const auto a100 = generate_atoms(100, p, 9001);
    REQUIRE(a10.count == 10);
    REQUIRE(a100.count == 100);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(a10.gammas[k] == a100.gammas[k]);
        CHECK(a10.xis[k] == a100.xis[k]);
        CHECK(a10.log_abs_xis[k] == a100.log_abs_xis[k]);
        CHECK(a10.gs[k] == a100.gs[k]);
    }

    const auto rerun = generate_atoms(10, p, 9001);
    CHECK(rerun.gammas == a10.gammas);
    CHECK(rerun.xis == a10.xis);
    CHECK(rerun.gs == a10.gs);

    const auto other_seed = generate_atoms(10, p, 9002);
    bool any_diff = false;
    for (std::size_t k = 0; k < 10; ++k) any_diff |= other_seed.xis[k] != a10.xis[k];
    CHECK(any_diff);

    // reseeding only the gaussian family leaves the other two untouched
    const auto swapped = generate_atoms_from_streams(
        10, p, rng::CounterStream(9001, rng::kArrivalDomain),
        rng::CounterStream(9001, rng::kSpectralDomain),
        rng::CounterStream(777, rng::kGaussianDomain));
    CHECK(swapped.gammas == a10.gammas);
    CHECK(swapped.xis == a10.xis);
    bool gs_diff = false;
    for (std::size_t k = 0; k < 10; ++k) gs_diff |= swapped.gs[k] != a10.gs[k];
    CHECK(gs_diff);

    const auto empty = generate_atoms(0, p, 1);
    CHECK(empty.count == 0);
    CHECK(empty.gammas.empty());

    StableParams bad;
    bad.alpha = 2.5;
    CHECK_THROWS_AS(generate_atoms(3, bad, 1), parameter_error);
}
