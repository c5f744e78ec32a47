#include "spde/lepage.hpp"

#include "spde/errors.hpp"
#include "spde/quadrature.hpp"
#include "spde/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace spde;

namespace {

AtomSequence single_atom(double gamma1, double xi, std::complex<double> g) {
    AtomSequence a;
    a.count = 1;
    a.gammas = {gamma1};
    a.xis = {xi};
    a.log_abs_xis = {std::log(std::abs(xi))};
    a.gs = {g};
    a.seed = 0;
    return a;
}

// Log-increment regression estimate of the path's Holder exponent over
// dyadic lags.
double holder_exponent_estimate(const Path& path) {
    std::vector<double> log_lag, log_inc;
    for (std::size_t lag = 1; lag <= 64; lag *= 2) {
        double mean = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i + lag < path.values.size(); ++i) {
            mean += std::abs(path.values[i + lag] - path.values[i]);
            ++cnt;
        }
        mean /= static_cast<double>(cnt);
        log_lag.push_back(std::log(path.grid[lag] - path.grid[0]));
        log_inc.push_back(std::log(mean));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(log_lag.size());
    for (std::size_t i = 0; i < log_lag.size(); ++i) {
        sx += log_lag[i];
        sy += log_inc[i];
        sxx += log_lag[i] * log_lag[i];
        sxy += log_lag[i] * log_inc[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Brute-force sigma^alpha(1): per-period adaptive Simpson plus analytic
// endpoint corrections; accurate to ~1e-3 relative, fully independent of the
// production quadrature.
double scale_alpha_one_bruteforce(double alpha, double hurst) {
    const double ah = alpha * hurst;
    auto f = [&](double x) {
        return std::pow(2.0 * std::abs(std::sin(0.5 * x)), alpha) *
               std::pow(x, -1.0 - ah);
    };
    const double eps = 1e-6;
    double acc = std::pow(eps, alpha * (1.0 - hurst)) / (alpha * (1.0 - hurst));
    acc += quad::adaptive_simpson(f, eps, 2.0 * M_PI, 1e-9);
    for (int j = 1; j * 2.0 * M_PI < 1000.0; ++j) {
        acc += quad::adaptive_simpson(f, 2.0 * M_PI * j, 2.0 * M_PI * (j + 1), 1e-9);
    }
    return 2.0 * acc;
}

}  // namespace

TEST_CASE("harmonizable kernel") {
    StableParams p;
    CHECK(std::abs(harmonizable_kernel(0.0, 3.7, p)) == 0.0);
    CHECK(std::abs(harmonizable_kernel(0.0, -0.1, p)) == 0.0);
    CHECK_THROWS_AS(harmonizable_kernel(1.0, 0.0, p), parameter_error);
    CHECK_THROWS_AS(harmonizable_kernel(-1.0, 1.0, p), parameter_error);

    // t=1, x=pi: e^{i pi} - 1 = -2, so the value is -2 pi^{-(1/alpha+H)}.
    const auto v = harmonizable_kernel(1.0, M_PI, p);
    CHECK(v.real() ==
          doctest::Approx(-2.0 * std::pow(M_PI, -(1.0 / 1.5 + 0.7))).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-15);

    const rng::CounterStream s(5, 5);
    for (std::size_t k = 0; k < 100; ++k) {
        const double t = 4.0 * s.open01(3 * k);
        const double x = 20.0 * (s.open01(3 * k + 1) - 0.5);
        if (x == 0.0) continue;
        const double mag = std::abs(harmonizable_kernel(t, x, p));
        const double expected = 2.0 * std::abs(std::sin(0.5 * t * x)) *
                                std::pow(std::abs(x), -1.0 / p.alpha - p.hurst);
        CHECK(mag == doctest::Approx(expected).epsilon(1e-12));
        CHECK(mag <= std::min(2.0, t * std::abs(x)) *
                             std::pow(std::abs(x), -1.0 / p.alpha - p.hurst) *
                             (1.0 + 1e-12));
    }
}

TEST_CASE("atom weight") {
    StableParams p;
    // Gamma=1, xi=1, g=1: C_alpha * phi(1)^{-2/3} with phi(1) = 1/4.
    const auto w = atom_weight(1, single_atom(1.0, 1.0, {1.0, 0.0}), p);
    const double expected = std::pow(0.25, -1.0 / 1.5) / std::cbrt(2.0 * M_PI);
    CHECK(w.weight.real() == doctest::Approx(expected).epsilon(1e-13));
    CHECK(w.weight.imag() == 0.0);
    CHECK(expected == doctest::Approx(1.365568).epsilon(1e-6));

    CHECK(std::abs(atom_weight(1, single_atom(1.0, 1.0, {0.0, 0.0}), p).weight) == 0.0);

    const auto w2 = atom_weight(1, single_atom(2.0, 1.0, {1.0, 0.0}), p);
    CHECK(std::abs(w2.weight) / std::abs(w.weight) ==
          doctest::Approx(std::pow(2.0, -1.0 / p.alpha)).epsilon(1e-13));

    CHECK_THROWS_AS(atom_weight(2, single_atom(1.0, 1.0, {1.0, 0.0}), p),
                    parameter_error);
    CHECK_THROWS_AS(atom_weight(0, single_atom(1.0, 1.0, {1.0, 0.0}), p),
                    parameter_error);
}

TEST_CASE("single-atom partial sum matches hand evaluation") {
    StableParams p;
    const auto atoms = single_atom(1.0, 1.0, {1.0, 0.0});
    // Re[w (e^{i} - 1)] with real w: w (cos 1 - 1).
    const double w = std::pow(0.25, -1.0 / 1.5) / std::cbrt(2.0 * M_PI);
    const double expected = w * (std::cos(1.0) - 1.0);
    CHECK(expected == doctest::Approx(-0.627749).epsilon(1e-6));
    CHECK(evaluate_ZN(1.0, atoms, 1, p) == doctest::Approx(expected).epsilon(1e-13));

    // complex g exercises the imaginary part of the kernel
    const auto atoms2 = single_atom(0.7, -2.3, {0.4, -1.1});
    const std::complex<double> w2 = atom_weight(1, atoms2, p).weight;
    const std::complex<double> f = harmonizable_kernel(0.9, -2.3, p);
    CHECK(evaluate_ZN(0.9, atoms2, 1, p) ==
          doctest::Approx((w2 * f).real()).epsilon(1e-12));
}

TEST_CASE("partial sums: structure and stability") {
    StableParams p;
    const auto atoms = generate_atoms(64, p, 4242);
    const SeriesEvaluator eval(atoms, p);

    CHECK(eval.value(0.0, 64) == 0.0);
    CHECK(eval.value(1.3, 0) == 0.0);
    CHECK_THROWS_AS(eval.value(1.0, 65), parameter_error);
    CHECK_THROWS_AS(eval.value(-0.2, 5), parameter_error);

    // additivity of increments, exactly
    for (std::size_t n : {1u, 7u, 63u}) {
        CHECK(eval.value(0.8, n + 1) == eval.value(0.8, n) + eval.increment(0.8, n + 1));
    }

    // telescoping against single-atom evaluations
    double sum = 0.0;
    for (std::size_t k = 1; k <= 64; ++k) {
        AtomSequence one = single_atom(atoms.gammas[k - 1], atoms.xis[k - 1],
                                       atoms.gs[k - 1]);
        one.log_abs_xis = {atoms.log_abs_xis[k - 1]};
        sum += evaluate_ZN(0.8, one, 1, p);
    }
    CHECK(sum == doctest::Approx(eval.value(0.8, 64)).epsilon(1e-12));

    // exact homogeneity under doubling of the marks
    AtomSequence doubled = atoms;
    for (auto& g : doubled.gs) g *= 2.0;
    CHECK(evaluate_ZN(0.8, doubled, 64, p) == 2.0 * eval.value(0.8, 64));

    AtomSequence scaled = atoms;
    for (auto& g : scaled.gs) g *= 1.7;
    CHECK(evaluate_ZN(0.8, scaled, 64, p) ==
          doctest::Approx(1.7 * eval.value(0.8, 64)).epsilon(1e-12));
}

TEST_CASE("sampled paths") {
    StableParams p;
    const auto atoms = generate_atoms(100, p, 777);
    std::vector<double> grid;
    for (int i = 0; i <= 32; ++i) grid.push_back(i / 32.0);

    const Path path = sample_path(grid, atoms, 100, p);
    CHECK(path.values[0] == 0.0);  // Z_N(0) = 0
    const Path path2 = sample_path(grid, atoms, 100, p);
    CHECK(path.values == path2.values);

    // pointwise agreement with evaluate_ZN
    const SeriesEvaluator eval(atoms, p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(path.values[i] == eval.value(grid[i], 100));
    }

    // nesting: path at N plus the missing atoms equals path at N'
    const Path p40 = sample_path(grid, atoms, 40, p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double inc = 0.0;
        for (std::size_t k = 41; k <= 100; ++k) inc += eval.increment(grid[i], k);
        CHECK(p40.values[i] + inc ==
              doctest::Approx(path.values[i]).epsilon(1e-12));
    }

    CHECK_THROWS_AS(sample_path({0.5, 0.4}, atoms, 10, p), parameter_error);
    CHECK_THROWS_AS(sample_path({-0.5, 0.4}, atoms, 10, p), parameter_error);
    CHECK_THROWS_AS(sample_path({}, atoms, 10, p), parameter_error);
}

TEST_CASE("path roughness sits in the expected band") {
    StableParams p;  // hurst = 0.7
    const auto atoms = generate_atoms(10000, p, 20240105);
    std::vector<double> grid;
    const std::size_t n = 1 << 12;
    for (std::size_t i = 0; i <= n; ++i) {
        grid.push_back(static_cast<double>(i) / static_cast<double>(n));
    }
    const Path path = sample_path(grid, atoms, 10000, p);
    const double exponent = holder_exponent_estimate(path);
    CHECK(exponent > 0.5);
    CHECK(exponent < 0.9);
}

TEST_CASE("scale parameter: positivity, self-similarity, independent check") {
    StableParams p;
    const double s1 = scale_parameter(1.0, p);
    CHECK(s1 > 0.0);
    CHECK_THROWS_AS(scale_parameter(0.0, p), parameter_error);
    CHECK_THROWS_AS(scale_parameter(-1.0, p), parameter_error);

    const double ah = p.alpha * p.hurst;
    CHECK(scale_parameter(2.0, p) / s1 ==
          doctest::Approx(std::pow(2.0, ah)).epsilon(1e-6));

    double lo = 1e300, hi = -1e300;
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
        const double ratio = scale_parameter(t, p) / std::pow(t, ah);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK((hi - lo) / (0.5 * (hi + lo)) < 1e-6);

    CHECK(s1 == doctest::Approx(scale_alpha_one_bruteforce(p.alpha, p.hurst))
                    .epsilon(5e-3));
}

TEST_CASE("empirical characteristic function") {
    CHECK(empirical_char_function({0.0, 0.0, 0.0}, 2.5) ==
          std::complex<double>(1.0, 0.0));
    CHECK(empirical_char_function({0.4, -2.0, 11.0}, 0.0) ==
          std::complex<double>(1.0, 0.0));
    CHECK_THROWS_AS(empirical_char_function({}, 1.0), parameter_error);
    const auto v = empirical_char_function({1.0, -1.0}, M_PI / 2.0);
    CHECK(v.real() == doctest::Approx(std::cos(M_PI / 2.0)).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.0));
}
