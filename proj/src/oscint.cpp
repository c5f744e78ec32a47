#include "spde/oscint.hpp"

#include "spde/errors.hpp"
#include "spde/quadrature.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace spde::osc {

namespace {

constexpr std::size_t kDegree = 10;
constexpr double kTaylorSwitch = 10.0;  // |kappa| at which the IBP recurrence takes over

// Chebyshev T_j -> monomial coefficient triangle, built once.
const std::array<std::array<double, kDegree + 1>, kDegree + 1>& cheb_to_monomial() {
    static const auto table = [] {
        std::array<std::array<double, kDegree + 1>, kDegree + 1> t{};
        t[0][0] = 1.0;
        t[1][1] = 1.0;
        for (std::size_t j = 2; j <= kDegree; ++j) {
            for (std::size_t i = 0; i + 1 <= kDegree; ++i) {
                t[j][i + 1] += 2.0 * t[j - 1][i];
            }
            for (std::size_t i = 0; i <= kDegree; ++i) t[j][i] -= t[j - 2][i];
        }
        return t;
    }();
    return table;
}

// mu_j(kappa) = int_{-1}^{1} w^j e^{i kappa w} dw for j = 0..kDegree.
void monomial_moments(double kappa, std::array<std::complex<double>, kDegree + 1>& mu) {
    const double ak = std::abs(kappa);
    if (ak <= kTaylorSwitch) {
        // Taylor expansion of e^{i kappa w}; only terms with j+m even survive.
        for (std::size_t j = 0; j <= kDegree; ++j) {
            std::complex<double> term(1.0, 0.0);  // (i kappa)^m / m!
            std::complex<double> sum(0.0, 0.0);
            for (std::size_t m = 0; m < 80; ++m) {
                if ((j + m) % 2 == 0) {
                    sum += term * (2.0 / static_cast<double>(j + m + 1));
                }
                term *= std::complex<double>(0.0, kappa) / static_cast<double>(m + 1);
                if (std::abs(term.real()) + std::abs(term.imag()) < 1e-18) break;
            }
            mu[j] = sum;
        }
        return;
    }
    // Integration by parts: mu_j = (E_j - j mu_{j-1}) / (i kappa) with
    // E_j = e^{i kappa} - (-1)^j e^{-i kappa}. Upward is stable for
    // |kappa| >= degree since each step scales errors by j/|kappa|.
    const double s = std::sin(kappa), c = std::cos(kappa);
    mu[0] = {2.0 * s / kappa, 0.0};
    for (std::size_t j = 1; j <= kDegree; ++j) {
        const std::complex<double> e =
            (j % 2 == 0) ? std::complex<double>(0.0, 2.0 * s)
                         : std::complex<double>(2.0 * c, 0.0);
        const std::complex<double> num = e - static_cast<double>(j) * mu[j - 1];
        // divide by i*kappa
        mu[j] = {num.imag() / kappa, -num.real() / kappa};
    }
}

}  // namespace

double riemann_lebesgue_bound(double sup_f, const ModulusOfContinuity& h,
                              double a, double b, double lambda) {
    if (lambda == 0.0) {
        throw parameter_error("riemann_lebesgue_bound: lambda must be nonzero");
    }
    if (!(a < b)) throw parameter_error("riemann_lebesgue_bound: requires a < b");
    if (!(sup_f >= 0.0)) {
        throw parameter_error("riemann_lebesgue_bound: sup_f must be nonnegative");
    }
    const double inv = 1.0 / std::abs(lambda);
    return 3.0 * (b - a) * h.evaluator(inv) + 2.0 * inv * sup_f;
}

OscillatoryPlan::OscillatoryPlan(const std::function<double(double)>& tau, double a,
                                 double b, const PlanOptions& opt)
    : a_(a), b_(b) {
    if (!(a < b)) throw parameter_error("OscillatoryPlan: requires a < b");
    const double p = std::min(std::max(opt.grade_exponent, 1.0), 6.0);

    // Oscillation-resolving width cap, applied while the panel count it
    // implies stays moderate; beyond that the exact moments carry the
    // frequency dependence and panels only need to resolve tau.
    double width_cap = b - a;
    const double al = std::abs(opt.lambda_hint);
    if (al > 0.0 && al * (b - a) <= 1024.0) {
        width_cap = std::min(width_cap, 1.0 / (4.0 * al));
    }

    for (std::size_t m = opt.initial_panels;; m *= 2) {
        std::vector<double> base = quad::graded_mesh(a, b, m, p, /*toward_b=*/true);
        std::vector<double> mesh;
        mesh.reserve(base.size());
        mesh.push_back(base.front());
        for (std::size_t i = 0; i + 1 < base.size(); ++i) {
            const double lo = base[i], hi = base[i + 1];
            const auto parts =
                static_cast<std::size_t>(std::ceil((hi - lo) / width_cap));
            for (std::size_t q = 1; q <= std::max<std::size_t>(parts, 1); ++q) {
                mesh.push_back(lo + (hi - lo) * static_cast<double>(q) /
                                        static_cast<double>(std::max<std::size_t>(parts, 1)));
            }
            mesh.back() = hi;
        }
        build(tau, mesh);
        if (interp_error_ <= opt.tol) return;
        if (2 * m > opt.max_panels) {
            std::ostringstream msg;
            msg << "oscillatory integral: interpolation error " << interp_error_
                << " > tolerance " << opt.tol << " with " << panels() << " panels";
            throw numerics_error(msg.str());
        }
    }
}

void OscillatoryPlan::build(const std::function<double(double)>& tau,
                            const std::vector<double>& mesh) {
    const auto& t2m = cheb_to_monomial();
    const std::size_t n = mesh.size() - 1;
    centers_.assign(n, 0.0);
    halfwidths_.assign(n, 0.0);
    coeffs_.assign(n * (kDegree + 1), 0.0);
    interp_error_ = 0.0;

    std::array<double, kDegree + 1> gridvals;  // tau at Chebyshev-Lobatto points
    std::array<double, kDegree + 1> cheb;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = 0.5 * (mesh[i] + mesh[i + 1]);
        const double h = 0.5 * (mesh[i + 1] - mesh[i]);
        centers_[i] = c;
        halfwidths_[i] = h;
        for (std::size_t k = 0; k <= kDegree; ++k) {
            const double w = std::cos(M_PI * static_cast<double>(k) / kDegree);
            gridvals[k] = tau(c + h * w);
        }
        for (std::size_t j = 0; j <= kDegree; ++j) {
            double s = 0.5 * (gridvals[0] + (j % 2 == 0 ? gridvals[kDegree]
                                                        : -gridvals[kDegree]));
            for (std::size_t k = 1; k < kDegree; ++k) {
                s += gridvals[k] * std::cos(M_PI * static_cast<double>(j * k) / kDegree);
            }
            cheb[j] = 2.0 * s / kDegree;
        }
        cheb[0] *= 0.5;
        cheb[kDegree] *= 0.5;
        double* a = &coeffs_[i * (kDegree + 1)];
        for (std::size_t j = 0; j <= kDegree; ++j) {
            for (std::size_t q = 0; q <= j; ++q) a[q] += cheb[j] * t2m[j][q];
        }
        // Chebyshev tail as the panel's sup-error proxy; factor 4 for slack.
        interp_error_ +=
            2.0 * h * 4.0 * (std::abs(cheb[kDegree - 1]) + std::abs(cheb[kDegree]));
    }
}

std::complex<double> OscillatoryPlan::integrate(double lambda) const {
    std::array<std::complex<double>, kDegree + 1> mu;
    std::complex<double> total(0.0, 0.0);
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        const double h = halfwidths_[i];
        monomial_moments(lambda * h, mu);
        const double* a = &coeffs_[i * (kDegree + 1)];
        std::complex<double> s(0.0, 0.0);
        for (std::size_t j = 0; j <= kDegree; ++j) s += a[j] * mu[j];
        const double phase = lambda * centers_[i];
        total += h * std::complex<double>(std::cos(phase), std::sin(phase)) * s;
    }
    return total;
}

std::complex<double> oscillatory_integral(const std::function<double(double)>& tau,
                                          double a, double b, double lambda,
                                          double tol, double grade_exponent) {
    PlanOptions opt;
    opt.tol = tol;
    opt.grade_exponent = grade_exponent;
    opt.lambda_hint = lambda;
    return OscillatoryPlan(tau, a, b, opt).integrate(lambda);
}

std::complex<double> oscillatory_integral_complex(
    const std::function<std::complex<double>(double)>& tau, double a, double b,
    double lambda, double tol, double grade_exponent) {
    const std::function<double(double)> re_part = [&](double s) { return tau(s).real(); };
    const std::function<double(double)> im_part = [&](double s) { return tau(s).imag(); };
    const auto re = oscillatory_integral(re_part, a, b, lambda, tol, grade_exponent);
    const auto im = oscillatory_integral(im_part, a, b, lambda, tol, grade_exponent);
    return re + std::complex<double>(0.0, 1.0) * im;
}

}  // namespace spde::osc
