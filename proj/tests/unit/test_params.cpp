#include "spde/params.hpp"

#include "spde/errors.hpp"
#include "spde/quadrature.hpp"
#include "spde/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace spde;

namespace {

// Oracle: integral of the unnormalized spectral density in log coordinates,
// int |x|^{-1}(1+|ln|x||)^{-1-eta} dx = 2 int_R (1+|v|)^{-1-eta} dv, done by
// adaptive quadrature over stretched decades plus the exact tail
// antiderivative 2 (1+V)^{-eta} / eta.
double unnormalized_mass_by_quadrature(double eta) {
    double acc = 0.0;
    double lo = 0.0;
    for (double hi = 1.0; lo < 1e13; hi *= 10.0) {
        acc += quad::adaptive_simpson(
            [eta](double v) { return std::pow(1.0 + v, -1.0 - eta); }, lo, hi,
            1e-13);
        lo = hi;
    }
    acc += std::pow(1.0 + lo, -eta) / eta;  // exact tail
    return 4.0 * acc;                       // two signs of v, two signs of x
}

// Oracle for the normalized density: quadrature through density_phi itself,
// x = s e^v over |v| <= 700 (the representable range), exact antiderivative
// for the remaining tail mass.
double phi_mass_by_quadrature(double eta) {
    double acc = 0.0;
    const double edges[] = {0.0, 1.0, 10.0, 100.0, 700.0};
    for (double s : {-1.0, 1.0}) {
        for (double sign_v : {-1.0, 1.0}) {
            for (int i = 0; i < 4; ++i) {
                acc += quad::adaptive_simpson(
                    [&](double v) {
                        const double x = s * std::exp(sign_v * v);
                        return density_phi(x, eta) * std::abs(x);
                    },
                    edges[i], edges[i + 1], 1e-11);
            }
        }
    }
    const double k_eta = normalization_constant(eta);
    acc += 4.0 * k_eta * std::pow(701.0, -eta) / eta;  // |v| > 700, both signs
    return acc;
}

}  // namespace

TEST_CASE("parameter admissibility") {
    StableParams good;
    CHECK_NOTHROW(good.validate());
    auto reject = [](auto mutate) {
        StableParams p;
        mutate(p);
        CHECK_THROWS_AS(p.validate(), parameter_error);
    };
    reject([](StableParams& p) { p.alpha = 1.0; });
    reject([](StableParams& p) { p.alpha = 2.0; });
    reject([](StableParams& p) { p.alpha = 2.4; });
    reject([](StableParams& p) { p.hurst = 0.5; });
    reject([](StableParams& p) { p.hurst = 1.0; });
    reject([](StableParams& p) { p.eta = 0.0; });
    reject([](StableParams& p) { p.gamma = 0.5; });
    reject([](StableParams& p) { p.beta = 0.95; });  // above gamma
    reject([](StableParams& p) { p.beta = 0.25; });  // below 1 - hurst
    CHECK(StableParams::default_beta(0.7, 0.9) == doctest::Approx(0.6));
}

TEST_CASE("normalization constant equals eta/4 and matches quadrature") {
    CHECK(normalization_constant(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(normalization_constant(0.5) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(normalization_constant(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double eta : {0.5, 1.0, 2.0}) {
        const double quadrature_k = 1.0 / unnormalized_mass_by_quadrature(eta);
        CHECK(std::abs(normalization_constant(eta) - quadrature_k) <=
              1e-8 * quadrature_k);
    }
    CHECK_THROWS_AS(normalization_constant(0.0), parameter_error);
    CHECK_THROWS_AS(normalization_constant(-1.0), parameter_error);
}

TEST_CASE("density values, symmetry and unit mass") {
    CHECK(density_phi(1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(density_phi(-1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(density_phi(M_E, 1.0) ==
          doctest::Approx(1.0 / (16.0 * M_E)).epsilon(1e-14));
    CHECK_THROWS_AS(density_phi(0.0, 1.0), parameter_error);

    const rng::CounterStream pts(42, 7);
    for (std::size_t k = 0; k < 50; ++k) {
        const double x = std::exp(12.0 * (pts.open01(k) - 0.5));
        CHECK(density_phi(x, 0.7) == density_phi(-x, 0.7));
    }
    for (double eta : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(phi_mass_by_quadrature(eta) - 1.0) < 1e-6);
    }
}

TEST_CASE("log-space density agrees with the direct form") {
    for (double u : {-20.0, -3.0, -0.1, 0.0, 0.4, 5.0, 40.0}) {
        const double x = std::exp(u);
        CHECK(log_density_phi_from_log_abs(u, 1.3) ==
              doctest::Approx(std::log(density_phi(x, 1.3))).epsilon(1e-12));
    }
}

TEST_CASE("stable scaling constant") {
    // At alpha = 3/2: Gamma(1/2) cos(3 pi/4)/(-1/2) = sqrt(2 pi), so the
    // normalization is (2 pi)^{-1/3}.
    CHECK(stable_scaling_constant(1.5) ==
          doctest::Approx(1.0 / std::cbrt(2.0 * M_PI)).epsilon(1e-14));
    CHECK(stable_scaling_constant(1.5) == doctest::Approx(0.541926).epsilon(1e-6));
    const double direct_12 =
        std::pow(std::tgamma(0.8) * std::cos(0.6 * M_PI) / (1.0 - 1.2), -1.0 / 1.2);
    CHECK(stable_scaling_constant(1.2) == doctest::Approx(direct_12).epsilon(1e-14));

    const rng::CounterStream alphas(99, 3);
    for (std::size_t k = 0; k < 10; ++k) {
        const double a = 1.01 + 0.98 * alphas.open01(k);
        CHECK(stable_scaling_constant(a) > 0.0);
    }
    CHECK_THROWS_AS(stable_scaling_constant(1.0), parameter_error);
    CHECK_THROWS_AS(stable_scaling_constant(2.0), parameter_error);
}

TEST_CASE("gaussian half scale normalizes the alpha-moment") {
    const double s = gaussian_half_scale(1.5);
    CHECK(s == doctest::Approx(1.105743).epsilon(1e-6));
    // Quadrature oracle: E|X|^alpha for X ~ N(0, s^2) must equal 1.
    for (double alpha : {1.2, 1.5, 1.8}) {
        const double sa = gaussian_half_scale(alpha);
        const double moment = quad::adaptive_simpson(
            [&](double x) {
                return 2.0 * std::pow(x, alpha) *
                       std::exp(-x * x / (2.0 * sa * sa)) /
                       (sa * std::sqrt(2.0 * M_PI));
            },
            0.0, 12.0 * sa, 1e-12);
        CHECK(moment == doctest::Approx(1.0).epsilon(1e-10));
    }
    // s -> 1 as alpha -> 2 (there E|Re g|^2 = s^2)
    CHECK(gaussian_half_scale(1.999999) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(gaussian_half_scale(0.9), parameter_error);
}

TEST_CASE("analytic constants are smooth in alpha") {
    for (auto* fn : {&stable_scaling_constant, &gaussian_half_scale}) {
        const double coarse = ((*fn)(1.5 + 1e-3) - (*fn)(1.5 - 1e-3)) / 2e-3;
        const double fine = ((*fn)(1.5 + 5e-4) - (*fn)(1.5 - 5e-4)) / 1e-3;
        CHECK(std::abs(coarse - fine) <= 1e-4 * std::abs(fine));
    }
}
