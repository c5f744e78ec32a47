#pragma once

#include <cstdint>

namespace spde {

/// Model parameter bundle. `validate()` enforces the admissible ranges; the
/// open endpoints are rejected outright (the scaling constant degenerates at
/// alpha = 1 and alpha = 2).
struct StableParams {
    double alpha = 1.5;  // stability index, in (1,2)
    double hurst = 0.7;  // self-similarity index, in (1/2,1)
    double eta = 1.0;    // spectral density shape, > 0
    double gamma = 0.9;  // Holder order of the coefficient sigma, in (1/2,1)
    double beta = 0.6;   // fractional order, in (1-hurst, gamma)

    void validate() const;  // throws parameter_error

    // Midpoint of the admissible interval (1-hurst, gamma).
    static double default_beta(double hurst_, double gamma_) {
        return 0.5 * ((1.0 - hurst_) + gamma_);
    }
};

// K_eta with phi(x) = K_eta |x|^{-1} (1 + |ln|x||)^{-1-eta}. Equals eta/4.
double normalization_constant(double eta);

// Spectral sampling density phi evaluated at x != 0.
double density_phi(double x, double eta);

// log(phi(x)) written in terms of u = ln|x|; safe for |u| far beyond the
// range where e^u is representable.
double log_density_phi_from_log_abs(double log_abs_x, double eta);

// Series normalization ((1-alpha) / (Gamma(2-alpha) cos(pi alpha/2)))^{1/alpha}:
// exactly cancels the scale of the bare shot-noise sum, so the represented
// field carries the L^alpha norm of its kernel as its scale parameter.
double stable_scaling_constant(double alpha);

// Standard deviation s for the real and imaginary parts of the Gaussian
// marks, chosen so that E|Re g|^alpha = 1.
double gaussian_half_scale(double alpha);

}  // namespace spde
