#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace spde::osc {

/// Nondecreasing bound h with |f(x)-f(y)| <= h(|x-y|).
struct ModulusOfContinuity {
    std::function<double(double)> evaluator;
};

// 3 (b-a) h(1/|lambda|) + 2 sup|f| / |lambda|; the computable decay
// certificate for |int_a^b f e^{i lambda x} dx|. lambda must be nonzero.
double riemann_lebesgue_bound(double sup_f, const ModulusOfContinuity& h,
                              double a, double b, double lambda);

struct PlanOptions {
    double tol = 1e-9;             // absolute tolerance on the integral
    double grade_exponent = 1.0;   // panel clustering toward b; 1 = uniform
    std::size_t initial_panels = 8;
    std::size_t max_panels = 8192;
    // When nonzero and |lambda|(b-a) is moderate, panel widths are also
    // capped at 1/(4|lambda|) so every oscillation is resolved by nodes.
    double lambda_hint = 0.0;
};

/// Panel decomposition of [a,b] with a degree-10 Chebyshev model of tau per
/// panel. The e^{i lambda s} factor is integrated against the model exactly
/// (monomial moments by Taylor series for small lambda*h, by the integration
/// -by-parts recurrence for large), so one plan built for tau serves every
/// frequency: the interpolation error bound is frequency-independent.
///
/// Panels are refined (doubling, grading preserved) until the Chebyshev tail
/// indicator meets tol; otherwise numerics_error reports the achieved error.
class OscillatoryPlan {
public:
    OscillatoryPlan(const std::function<double(double)>& tau, double a, double b,
                    const PlanOptions& opt = {});

    std::complex<double> integrate(double lambda) const;

    double interpolation_error_bound() const { return interp_error_; }
    std::size_t panels() const { return centers_.size(); }
    double lower() const { return a_; }
    double upper() const { return b_; }

private:
    void build(const std::function<double(double)>& tau,
               const std::vector<double>& mesh);

    double a_, b_;
    double interp_error_ = 0.0;
    std::vector<double> centers_;
    std::vector<double> halfwidths_;
    std::vector<double> coeffs_;  // monomial coefficients, degree+1 per panel
};

// int_a^b tau(s) e^{i lambda s} ds. For lambda = 0 this is plain quadrature.
std::complex<double> oscillatory_integral(const std::function<double(double)>& tau,
                                          double a, double b, double lambda,
                                          double tol = 1e-9,
                                          double grade_exponent = 1.0);

// Complex-valued tau.
std::complex<double> oscillatory_integral_complex(
    const std::function<std::complex<double>(double)>& tau, double a, double b,
    double lambda, double tol = 1e-9, double grade_exponent = 1.0);

}  // namespace spde::osc
