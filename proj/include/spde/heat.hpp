#pragma once

#include "spde/atoms.hpp"
#include "spde/expr.hpp"
#include "spde/fraccalc.hpp"
#include "spde/lepage.hpp"
#include "spde/oscint.hpp"
#include "spde/params.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace spde {

struct Domain {
    double t_min = 0.0;
    double t_max = 1.0;
    double x_min = -1.0;
    double x_max = 1.0;
};

/// sigma(t,x) and U_0(x) as expression trees with the declared joint Holder
/// order and sup bound the solver relies on. Holder regularity is a promise,
/// spot-checked by validate_coefficient_spec, never inferred.
struct CoefficientSpec {
    std::shared_ptr<const expr::Ast> sigma;
    std::shared_ptr<const expr::Ast> u0;
    double gamma = 0.9;
    double sigma_sup = 1.0;
    double sigma_holder_est = 0.0;  // empirical joint Holder constant, from validation

    double sigma_eval(double t, double x) const { return expr::eval(*sigma, t, x); }
    double u0_eval(double x) const { return expr::eval(*u0, 0.0, x); }
};

// Parses both expressions; u0 must not reference t.
CoefficientSpec make_coefficient_spec(const std::string& sigma_src,
                                      const std::string& u0_src, double gamma,
                                      double sigma_sup);

// Spot-checks |sigma| <= sigma_sup on a dense grid and estimates the joint
// Holder constant on deterministic pseudo-random pairs; fills
// sigma_holder_est. Throws parameter_error on a bound violation.
void validate_coefficient_spec(CoefficientSpec& spec, const Domain& domain);

// rho(t,x) = (4 pi t)^{-1/2} exp(-x^2 / 4t), t > 0.
double heat_kernel(double t, double x);

/// F(s) = int rho(t-s, x-y) sigma(s,y) dy evaluated by Gauss-Hermite
/// quadrature after y = x + 2 w sqrt(t-s); exact for sigma polynomial in y.
/// Extends continuously to s = t with F(t) = sigma(t,x).
class ConvolvedCoefficient {
public:
    ConvolvedCoefficient(double t, double x, CoefficientSpec spec,
                         std::size_t nodes = 64);
    double operator()(double s) const;
    double t_end() const { return t_; }

private:
    double t_, x_;
    CoefficientSpec spec_;  // shared_ptr-backed, cheap to copy
    std::size_t nodes_;
};

// Spec operation: F(s) for 0 <= s < t, with a 64 vs 96 node cross-check
// against tol.
double convolved_coefficient(double s, double t, double x,
                             const CoefficientSpec& spec, double tol = 1e-10);

// Heat semigroup applied to U_0 at (t,x), t > 0, same quadrature and
// cross-check.
double deterministic_part(double t, double x, const CoefficientSpec& spec,
                          double tol = 1e-10);

struct SeriesOptions {
    double plan_tol = 1e-10;   // interpolation budget of the Fourier plan
    double skip_tol = 1e-13;   // per-term magnitude below which v_k is dropped
    std::size_t hermite_nodes = 64;
};

/// Per-(t,x) engine for the series route: one Fourier plan of F serves every
/// atom frequency, so v_k costs a moment evaluation. Terms whose certified
/// magnitude bound (Riemann-Lebesgue certificate) falls below skip_tol are
/// dropped as exact zeros; the rule depends only on atom k's data, keeping
/// nested evaluations and parallel schedules bit-identical.
class MildSeries {
public:
    MildSeries(double t, double x, const CoefficientSpec& spec,
               const StableParams& params, const SeriesOptions& opt = {});
    MildSeries(const MildSeries&) = delete;
    MildSeries& operator=(const MildSeries&) = delete;

    double deterministic() const { return deterministic_; }
    double term(std::size_t k, const AtomSequence& atoms) const;  // v_k, 1-based
    double solution(const AtomSequence& atoms, std::size_t N) const;

    // U_N for every N in the (ascending) list, one pass over the atoms.
    std::vector<double> solutions(const AtomSequence& atoms,
                                  const std::vector<std::size_t>& Ns) const;

private:
    double t_, x_;
    const StableParams params_;
    double deterministic_ = 0.0;
    double log_c_alpha_, log_k_eta_;
    double sup_f_;           // bound on |F|
    double holder_const_;    // modulus scale for the decay certificate
    double gamma_;
    double space_moment_;    // int rho(1,z) |z|^gamma dz
    ConvolvedCoefficient coefficient_;
    std::unique_ptr<osc::OscillatoryPlan> plan_;
    SeriesOptions opt_;
};

// v_k(t,x); k is 1-based.
double term_vk(std::size_t k, double t, double x, const AtomSequence& atoms,
               const CoefficientSpec& spec, const StableParams& params,
               const SeriesOptions& opt = {});

// U_N(t,x) = deterministic part + sum_{k<=N} v_k.
double mild_solution_series(double t, double x, const AtomSequence& atoms,
                            std::size_t N, const CoefficientSpec& spec,
                            const StableParams& params,
                            const SeriesOptions& opt = {});

struct FracintOptions {
    std::size_t grid_points = 1025;  // time grid for the sampled path
    // F carries the declared gamma order, so the singular meshes converge at
    // a fractional rate; these tolerances sit well below the route budget.
    FracQuadOptions quad{1e-5, 3e-5, 16, 1024, 16, 1024};
};

// U_N(t,x) by the pathwise fractional-integral route: deterministic part
// plus int_0^t F dZ_N with Z_N sampled on a uniform grid and interpolated.
// beta must lie in (1 - hurst, gamma); pass 0 to use the midpoint default.
double mild_solution_fracint(double t, double x, const AtomSequence& atoms,
                             std::size_t N, const CoefficientSpec& spec,
                             const StableParams& params, double beta = 0.0,
                             const FracintOptions& opt = {});

}  // namespace spde
