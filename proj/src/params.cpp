#include "spde/params.hpp"

#include "spde/errors.hpp"

#include <cmath>
#include <sstream>

namespace spde {

void StableParams::validate() const {
    auto fail = [](const std::string& msg) { throw parameter_error("params: " + msg); };
    if (!(alpha > 1.0 && alpha < 2.0)) fail("alpha must lie in the open interval (1,2)");
    if (!(hurst > 0.5 && hurst < 1.0)) fail("hurst must lie in the open interval (1/2,1)");
    if (!(eta > 0.0)) fail("eta must be positive");
    if (!(gamma > 0.5 && gamma < 1.0)) fail("gamma must lie in the open interval (1/2,1)");
    if (!(1.0 - hurst < gamma)) fail("admissibility requires 1 - hurst < gamma");
    if (!(beta > 1.0 - hurst && beta < gamma)) {
        std::ostringstream msg;
        msg << "beta must lie in (" << 1.0 - hurst << "," << gamma << "), got " << beta;
        fail(msg.str());
    }
}

double normalization_constant(double eta) {
    if (!(eta > 0.0)) throw parameter_error("normalization_constant: eta must be positive");
    // int |x|^{-1} (1+|ln|x||)^{-1-eta} dx = 4/eta (substitute u = ln|x|).
    return 0.25 * eta;
}

double density_phi(double x, double eta) {
    if (!(eta > 0.0)) throw parameter_error("density_phi: eta must be positive");
    if (x == 0.0) throw parameter_error("density_phi: singular at x = 0");
    const double ax = std::abs(x);
    return normalization_constant(eta) / ax *
           std::pow(1.0 + std::abs(std::log(ax)), -1.0 - eta);
}

double log_density_phi_from_log_abs(double log_abs_x, double eta) {
    if (!std::isfinite(log_abs_x)) return -log_abs_x;  // the -u term dominates
    return std::log(normalization_constant(eta)) - log_abs_x -
           (1.0 + eta) * std::log1p(std::abs(log_abs_x));
}

double stable_scaling_constant(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw parameter_error("stable_scaling_constant: alpha must lie in (1,2)");
    }
    // Gamma(2-alpha) > 0, cos(pi alpha/2) < 0 and 1-alpha < 0 on (1,2), so
    // the ratio is strictly positive. The bare series sum_k Gamma_k^{-1/a} w_k
    // carries scale^alpha = int_0^infty x^{-alpha} sin(x) dx * E|w|^alpha =
    // ratio * E|w|^alpha, so the prefactor must supply ratio^{-1/alpha} for
    // the represented field to match the target scale; the empirical
    // characteristic function pins the sign of the exponent.
    const double ratio =
        std::tgamma(2.0 - alpha) * std::cos(M_PI * alpha / 2.0) / (1.0 - alpha);
    return std::pow(ratio, -1.0 / alpha);
}

double gaussian_half_scale(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw parameter_error("gaussian_half_scale: alpha must lie in (1,2)");
    }
    // E|X|^a = s^a 2^{a/2} Gamma((a+1)/2) / sqrt(pi) for X ~ N(0, s^2).
    const double moment1 = std::pow(2.0, alpha / 2.0) *
                           std::tgamma((alpha + 1.0) / 2.0) / std::sqrt(M_PI);
    return std::pow(moment1, -1.0 / alpha);
}

}  // namespace spde
