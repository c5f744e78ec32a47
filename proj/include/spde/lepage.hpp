#pragma once

#include "spde/atoms.hpp"
#include "spde/params.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace spde {

/// A sampled trajectory of the truncated series on a strictly increasing
/// time grid.
struct Path {
    std::vector<double> grid;
    std::vector<double> values;
    std::size_t n_atoms = 0;
    StableParams params;
    std::uint64_t seed = 0;
};

struct AtomWeight {
    std::size_t k = 0;  // 1-based series index
    std::complex<double> weight;
};

// (e^{itx} - 1) / |x|^{1/alpha + H}; the kernel of the harmonizable
// representation. x must be nonzero.
std::complex<double> harmonizable_kernel(double t, double x,
                                         const StableParams& params);

// C_alpha Gamma_k^{-1/alpha} phi(xi_k)^{-1/alpha} g_k, with the magnitude
// accumulated in log space before exponentiating.
AtomWeight atom_weight(std::size_t k, const AtomSequence& atoms,
                       const StableParams& params);

/// Evaluates partial sums Z_N(t) for one atom realization. Construction
/// precomputes every t-independent per-atom factor, so paths and replication
/// sweeps cost one fused multiply per atom per time. All per-atom magnitudes
/// are combined in log space: spectral points with |ln|xi|| in the hundreds
/// neither overflow nor produce NaN, they contribute their true (possibly
/// flushed-to-zero) value.
class SeriesEvaluator {
public:
    SeriesEvaluator(const AtomSequence& atoms, const StableParams& params);

    // Z_N(t); requires N <= atoms.count and t >= 0.
    double value(double t, std::size_t N) const;

    // Contribution of atom k (1-based), i.e. Z_k(t) - Z_{k-1}(t).
    double increment(double t, std::size_t k) const;

    std::size_t count() const { return n_; }

private:
    std::size_t n_;
    double alpha_, hurst_;
    std::vector<double> log_pref_;   // t-independent log magnitude, -H u included
    std::vector<double> sign_xi_;
    std::vector<double> xi_;
    std::vector<double> u_;          // ln|xi|
    std::vector<std::complex<double>> g_;
};

// Z_N(t) as a one-shot call.
double evaluate_ZN(double t, const AtomSequence& atoms, std::size_t N,
                   const StableParams& params);

// Z_N on a strictly increasing grid; bit-identical to pointwise evaluate_ZN.
Path sample_path(const std::vector<double>& grid, const AtomSequence& atoms,
                 std::size_t N, const StableParams& params);

// sigma^alpha(t) = int |f(t,x)|^alpha dx, by direct quadrature in x: a
// double-exponential rule on the singular piece (0, 1/t], per-period pieces
// across the oscillating tail, and an Euler-Maclaurin accelerated remainder.
// Throws numerics_error when the requested absolute tolerance is not met.
double scale_parameter(double t, const StableParams& params, double tol = 1e-9);

// (1/M) sum_j e^{i lambda s_j}.
std::complex<double> empirical_char_function(const std::vector<double>& samples,
                                             double lambda);

}  // namespace spde
