#include "spde/fraccalc.hpp"

#include "spde/errors.hpp"
#include "spde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spde {

namespace {

// Shared grading rule: substitution exponent 2/(holder gap), which turns the
// worst-case endpoint behavior dist^{gap-1} into a linear factor of the
// transformed variable. Capped to keep the transformed integrand's own
// derivatives moderate.
double grading_exponent(double holder_gap) {
    return std::min(std::max(2.0 / holder_gap, 1.0), 8.0);
}

void check_beta(double beta, const char* who) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw parameter_error(std::string(who) + ": beta must lie in (0,1)");
    }
}

// int over (x, far] of (fn(x) - fn(u)) |u - x|^{kernel_exponent} du, the
// singular half of either fractional derivative. kernel_exponent is -1-beta
// (left) or beta-2 (right), so the integral exists only through the
// difference in the numerator.
//
// Subtraction noise ~ eps |fn| passes through the kernel unattenuated and,
// summed over nodes, grows like dist_min^{kernel_exponent+1}: sampling
// arbitrarily close to x buries the value in rounding noise long before the
// refinement loop stops. For evaluators declared smooth the innermost sliver
// dist < delta is therefore integrated analytically from a secant slope
// (bias terms: curvature of the sliver C delta^{k+3}, slope bias C h0
// delta^{k+2}, slope noise eps/h0 delta^{k+2} -- all below 1e-10 for the
// scales used here), and the quadrature starts at delta, capping the noise
// amplification at eps delta^{kernel_exponent+1}.
double singular_inner(const std::function<double(double)>& fn, double fn_at_x,
                      double x, double far, double kernel_exponent,
                      double grading, bool smooth, double tol, std::size_t m0,
                      std::size_t m_max, quad::GradedResult& report) {
    const double length = std::abs(far - x);
    const double direction = far > x ? 1.0 : -1.0;
    double head = 0.0;
    double w_min = 0.0;
    if (smooth) {
        // Absolute floor 1e-7 keeps the noise amplification eps delta^{k+1}
        // under ~1e-12 even when the interval itself is microscopic (then the
        // secant model covers it entirely).
        const double delta = std::min(length, std::max(length * 1e-8, 1e-7));
        const double h0 = std::min(length, std::max(length * 1e-6, delta));
        const double slope = (fn_at_x - fn(x + direction * h0)) / h0;
        const double head_power = kernel_exponent + 2.0;
        head = slope * std::pow(delta, head_power) / head_power;
        w_min = std::pow(delta / length, 1.0 / grading);
    }
    if (w_min >= 1.0) {
        report.converged = true;
        report.error_estimate = 0.0;
        report.value = 0.0;
        return head;
    }
    const double lo = std::min(x, far), hi = std::max(x, far);
    report = quad::integrate_power_transformed(
        [&](double u, double dist) {
            return (fn_at_x - fn(u)) * std::pow(dist, kernel_exponent);
        },
        lo, hi, grading, /*singular_at_b=*/direction < 0.0, tol, m0, m_max, 8,
        w_min);
    return head + report.value;
}

[[noreturn]] void quadrature_failure(const char* who, const quad::GradedResult& r,
                                     double tol) {
    std::ostringstream msg;
    msg << who << ": singular quadrature stalled at error estimate "
        << r.error_estimate << " (tolerance " << tol << ", " << r.panels
        << " panels)";
    throw numerics_error(msg.str());
}

}  // namespace

double frac_derivative_left(const HolderFunction& f, double a, double beta,
                            double x, const FracQuadOptions& opt) {
    check_beta(beta, "frac_derivative_left");
    if (!(x > a)) throw parameter_error("frac_derivative_left: requires x > a");
    if (!(f.holder_order > beta)) {
        throw parameter_error(
            "frac_derivative_left: declared Holder order must exceed beta");
    }
    const double fx = f.evaluator(x);
    const double p = grading_exponent(f.holder_order - beta);
    quad::GradedResult report;
    const double integral =
        singular_inner(f.evaluator, fx, x, a, -1.0 - beta, p,
                       f.holder_order >= 0.999, opt.tol, opt.inner_m0,
                       opt.inner_m_max, report);
    if (!report.converged) quadrature_failure("frac_derivative_left", report, opt.tol);
    return (fx * std::pow(x - a, -beta) + beta * integral) /
           std::tgamma(1.0 - beta);
}

double frac_derivative_right(const HolderFunction& g, double b, double beta,
                             double x, const FracQuadOptions& opt) {
    check_beta(beta, "frac_derivative_right");
    if (!(x < b)) throw parameter_error("frac_derivative_right: requires x < b");
    if (!(g.holder_order > 1.0 - beta)) {
        throw parameter_error(
            "frac_derivative_right: declared Holder order must exceed 1 - beta");
    }
    const double gx = g.evaluator(x);
    const double gb = g.evaluator(b);
    const double p = grading_exponent(g.holder_order + beta - 1.0);
    quad::GradedResult report;
    const double integral =
        singular_inner(g.evaluator, gx, x, b, beta - 2.0, p,
                       g.holder_order >= 0.999, opt.tol, opt.inner_m0,
                       opt.inner_m_max, report);
    if (!report.converged) quadrature_failure("frac_derivative_right", report, opt.tol);
    return ((gx - gb) * std::pow(b - x, beta - 1.0) + (1.0 - beta) * integral) /
           std::tgamma(beta);
}

PathInterpolant::PathInterpolant(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() < 2 || grid_.size() != values_.size()) {
        throw parameter_error("PathInterpolant: needs matching grids with >= 2 points");
    }
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        if (!(grid_[i] > grid_[i - 1])) {
            throw parameter_error("PathInterpolant: grid must be strictly increasing");
        }
    }
}

PathInterpolant::PathInterpolant(const Path& path)
    : PathInterpolant(path.grid, path.values) {}

double PathInterpolant::operator()(double s) const {
    if (!(s >= grid_.front() && s <= grid_.back())) {
        throw parameter_error("PathInterpolant: point outside the sampled range");
    }
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
    const std::size_t i = std::min<std::size_t>(
        grid_.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                              0, (it - grid_.begin()) - 1)));
    const double slope = (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
    return values_[i] + slope * (s - grid_[i]);
}

double PathInterpolant::frac_derivative_right(double beta, double x) const {
    check_beta(beta, "PathInterpolant::frac_derivative_right");
    const double b = grid_.back();
    if (!(x >= grid_.front() && x < b)) {
        throw parameter_error("PathInterpolant::frac_derivative_right: x outside [lo, hi)");
    }
    const double gx = (*this)(x);
    // Segment containing x.
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    std::size_t i = std::min<std::size_t>(
        grid_.size() - 2,
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - grid_.begin()) - 1)));

    // int_x^b (g(x) - g(u)) (u-x)^{beta-2} du, segment by segment:
    // with g(u) = g_i(lo) + m (u - lo) on a segment,
    //   integrand = [d - m (u-x)] (u-x)^{beta-2},  d = g(x) - (line through x),
    // whose antiderivative is d (u-x)^{beta-1}/(beta-1) - m (u-x)^beta / beta.
    // On the segment containing x, d == 0 exactly, so the divergent power
    // never carries a coefficient.
    double acc = 0.0;
    double lo = x;
    for (; i + 1 < grid_.size(); ++i) {
        const double hi = grid_[i + 1];
        if (!(hi > lo)) continue;
        const double m = (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
        const double line_at_x = values_[i] + m * (x - grid_[i]);
        const double d = gx - line_at_x;
        const double w_hi = hi - x;
        const double w_lo = lo - x;
        double term = -m * (std::pow(w_hi, beta) - std::pow(w_lo, beta)) / beta;
        if (d != 0.0) {
            term += d * (std::pow(w_hi, beta - 1.0) - std::pow(w_lo, beta - 1.0)) /
                    (beta - 1.0);
        }
        acc += term;
        lo = hi;
    }
    const double gb = values_.back();
    return ((gx - gb) * std::pow(b - x, beta - 1.0) + (1.0 - beta) * acc) /
           std::tgamma(beta);
}

HolderFunction PathInterpolant::as_holder_function(double declared_order) const {
    return {[*this](double s) { return (*this)(s); }, declared_order, std::nullopt};
}

namespace {

double zahle_outer(const std::function<double(double)>& product, double a, double b,
                   double beta, double right_gap, const FracQuadOptions& opt) {
    // The outer integrand behaves like dist^{-beta} at a and dist^{right_gap}
    // at b. Each half is integrated under its own power substitution, with
    // the last 1e-6 of the distance range folded into an analytic head
    // dist_head * P(at dist_head) / (exponent + 1): the sliver's frozen-power
    // model. This keeps the derivative brackets away from the regime where
    // their own intervals become ill-conditioned.
    const double mid = 0.5 * (a + b);
    auto by_point = [&](double x, double) { return product(x); };
    const double half = mid - a;
    const double d_head = half * 1e-6;

    const double p_left = grading_exponent(1.0 - beta);
    const double head_left = d_head * product(a + d_head) / (1.0 - beta);
    const quad::GradedResult left = quad::integrate_power_transformed(
        by_point, a, mid, p_left, /*singular_at_b=*/false, opt.outer_tol,
        opt.outer_m0, opt.outer_m_max, 8, std::pow(1e-6, 1.0 / p_left));
    if (!left.converged) quadrature_failure("zahle_integral", left, opt.outer_tol);

    const double p_right = grading_exponent(right_gap);
    const double head_right = d_head * product(b - d_head) / (right_gap + 1.0);
    const quad::GradedResult right = quad::integrate_power_transformed(
        by_point, mid, b, p_right, /*singular_at_b=*/true, opt.outer_tol,
        opt.outer_m0, opt.outer_m_max, 8, std::pow(1e-6, 1.0 / p_right));
    if (!right.converged) quadrature_failure("zahle_integral", right, opt.outer_tol);

    // The two one-sided derivatives are real brackets of operators that pair
    // with a factor (-1)^beta (-1)^{1-beta} = -1; dropping it flips the sign
    // of the classical limit.
    return -(head_left + left.value + head_right + right.value);
}

void check_zahle_args(const HolderFunction& f, double g_order, double beta) {
    check_beta(beta, "zahle_integral");
    if (!(beta < f.holder_order && beta > 1.0 - g_order)) {
        std::ostringstream msg;
        msg << "zahle_integral: beta = " << beta << " outside the admissible ("
            << 1.0 - g_order << "," << f.holder_order << ")";
        throw parameter_error(msg.str());
    }
}

}  // namespace

double zahle_integral(const HolderFunction& f, const HolderFunction& g, double a,
                      double b, double beta, const FracQuadOptions& opt) {
    if (a == b) return 0.0;
    if (!(a < b)) throw parameter_error("zahle_integral: requires a <= b");
    check_zahle_args(f, g.holder_order, beta);
    auto product = [&](double x) {
        return frac_derivative_left(f, a, beta, x, opt) *
               frac_derivative_right(g, b, beta, x, opt);
    };
    return zahle_outer(product, a, b, beta, g.holder_order + beta - 1.0, opt);
}

double zahle_integral(const HolderFunction& f, const PathInterpolant& g, double a,
                      double b, double beta, const FracQuadOptions& opt) {
    if (a == b) return 0.0;
    if (!(a < b)) throw parameter_error("zahle_integral: requires a <= b");
    if (!(a >= g.lower() && b <= g.upper())) {
        throw parameter_error("zahle_integral: [a,b] outside the sampled path");
    }
    check_beta(beta, "zahle_integral");
    if (!(beta < f.holder_order)) {
        throw parameter_error("zahle_integral: beta must be below f's Holder order");
    }
    auto product = [&](double x) {
        return frac_derivative_left(f, a, beta, x, opt) *
               g.frac_derivative_right(beta, x);
    };

    // The exact right bracket of a piecewise-linear path has a derivative
    // jump at every path node, so the interior is integrated segment by
    // segment (the integrand is smooth strictly inside each), and only the
    // two end pieces need the singular substitution.
    const std::vector<double>& grid = g.grid();
    std::vector<double> interior;
    for (double s : grid) {
        if (s > a && s < b) interior.push_back(s);
    }
    if (interior.size() < 2) return zahle_outer(product, a, b, beta, beta, opt);

    auto by_point = [&](double x, double) { return product(x); };
    const double p_left = grading_exponent(1.0 - beta);
    const double d_left = (interior.front() - a) * 1e-6;
    const double head_left = d_left * product(a + d_left) / (1.0 - beta);
    const quad::GradedResult left = quad::integrate_power_transformed(
        by_point, a, interior.front(), p_left, /*singular_at_b=*/false,
        opt.outer_tol, opt.outer_m0, opt.outer_m_max, 8,
        std::pow(1e-6, 1.0 / p_left));
    if (!left.converged) quadrature_failure("zahle_integral", left, opt.outer_tol);

    const double p_right = grading_exponent(beta);
    const double d_right = (b - interior.back()) * 1e-6;
    const double head_right = d_right * product(b - d_right) / (beta + 1.0);
    const quad::GradedResult right = quad::integrate_power_transformed(
        by_point, interior.back(), b, p_right, /*singular_at_b=*/true,
        opt.outer_tol, opt.outer_m0, opt.outer_m_max, 8,
        std::pow(1e-6, 1.0 / p_right));
    if (!right.converged) quadrature_failure("zahle_integral", right, opt.outer_tol);

    // Interior: per-segment Gauss-Legendre, verified by halving each segment.
    const quad::Rule& rule = quad::gauss_legendre(8);
    auto middle_pass = [&](int splits) {
        double total = 0.0;
        for (std::size_t j = 0; j + 1 < interior.size(); ++j) {
            for (int q = 0; q < splits; ++q) {
                const double lo = interior[j] + (interior[j + 1] - interior[j]) *
                                                    static_cast<double>(q) / splits;
                const double hi = interior[j] + (interior[j + 1] - interior[j]) *
                                                    static_cast<double>(q + 1) / splits;
                const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
                double sum = 0.0;
                for (std::size_t i = 0; i < 8; ++i) {
                    sum += rule.weights[i] * product(mid + half * rule.nodes[i]);
                }
                total += sum * half;
            }
        }
        return total;
    };
    const double middle1 = middle_pass(1);
    const double middle2 = middle_pass(2);
    const double middle_err = std::abs(middle2 - middle1);
    const double value =
        -(head_left + left.value + middle2 + head_right + right.value);
    if (middle_err > 10.0 * opt.outer_tol * (1.0 + std::abs(value))) {
        std::ostringstream msg;
        msg << "zahle_integral: interior refinement difference " << middle_err
            << " exceeds tolerance " << opt.outer_tol;
        throw numerics_error(msg.str());
    }
    return value;
}

double riemann_stieltjes_oracle(const std::function<double(double)>& f,
                                const std::function<double(double)>& g, double a,
                                double b, std::size_t n) {
    if (n == 0) throw parameter_error("riemann_stieltjes_oracle: n must be >= 1");
    double acc = 0.0;
    double x_prev = a;
    double g_prev = g(a);
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        const double g_cur = g(x);
        acc += f(x_prev) * (g_cur - g_prev);
        x_prev = x;
        g_prev = g_cur;
    }
    return acc;
}

}  // namespace spde
