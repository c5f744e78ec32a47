#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace spde::quad {

struct Rule {
    std::vector<double> nodes;    // symmetric about 0
    std::vector<double> weights;  // positive
};

// Gauss-Legendre rule on [-1,1]. Cached per n; thread-safe after first use.
const Rule& gauss_legendre(std::size_t n);

// Gauss-Hermite rule for the weight e^{-x^2} on (-inf,inf), sum of weights
// = sqrt(pi). Nodes are exactly +/- paired so odd integrands cancel exactly.
const Rule& gauss_hermite(std::size_t n);

// Adaptive Simpson with absolute tolerance. Throws numerics_error if the
// recursion depth cap is hit before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

// Double-exponential (tanh-sinh) quadrature on the open interval (a,b).
// Handles integrable endpoint singularities; near the endpoints the abscissa
// is formed as endpoint + offset with the offset computed to full relative
// accuracy, so integrands singular at a = 0 keep their precision.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_level = 12);

struct TsResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

// As tanh_sinh, but reports the last refinement delta instead of silently
// returning the best effort.
TsResult tanh_sinh_ex(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12, int max_level = 12);

// Mesh of m+1 points on [a,b] with spacing graded by exponent p >= 1 toward
// one endpoint (power-law clustering). p = 1 is uniform.
std::vector<double> graded_mesh(double a, double b, std::size_t m, double p,
                                bool toward_b);

// Composite fixed-order Gauss-Legendre over the given mesh.
double composite_gl(const std::function<double(double)>& f,
                    const std::vector<double>& mesh, std::size_t order = 8);

struct GradedResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
    bool converged = false;
};

// Integral of f over (a,b) with an algebraic endpoint singularity, via the
// power substitution that makes the transformed integrand smooth: with the
// singular endpoint e and length L, points are e -/+ L w^p and composite GL
// runs on a uniform w-mesh. The integrand receives both the point and its
// exact distance to the singular endpoint, so 1/(x - e)^c factors lose no
// precision however close the node. Doubles the mesh until two refinements
// agree within tol.
// w_min > 0 excludes the innermost sliver (distances below L w_min^p); the
// caller accounts for it analytically.
GradedResult integrate_power_transformed(
    const std::function<double(double, double)>& f_point_dist, double a, double b,
    double p, bool singular_at_b, double tol, std::size_t m0 = 8,
    std::size_t m_max = 2048, std::size_t order = 8, double w_min = 0.0);

}  // namespace spde::quad
