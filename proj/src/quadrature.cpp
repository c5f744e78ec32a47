#include "spde/quadrature.hpp"

#include "spde/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace spde::quad {

namespace {

Rule make_gauss_legendre(std::size_t n) {
    // Newton iteration on P_n, initial guesses from the Chebyshev-like
    // asymptotic formula. Standard construction, machine precision for the
    // small n used here.
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;  // kill the -0.0 from cos(pi/2)
    return r;
}

Rule make_gauss_hermite(std::size_t n) {
    // Orthonormal Hermite recurrence for the weight e^{-x^2}:
    //   p_{k+1}(x) = x sqrt(2/(k+1)) p_k(x) - sqrt(k/(k+1)) p_{k-1}(x),
    // p_0 = pi^{-1/4}. Newton initial guesses follow the usual largest-root
    // asymptotics and step inward. Weight at a root: 1 / sum_{k<n} p_k^2.
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double p0norm = std::pow(M_PI, -0.25);
    const std::size_t half = (n + 1) / 2;
    std::vector<double> roots;  // found so far, largest first
    roots.reserve(half);
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) -
                1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * roots[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * roots[1];
        } else {
            z = 2.0 * z - roots[i - 2];
        }
        double sumsq = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double pk = p0norm, pkm1 = 0.0;
            sumsq = pk * pk;
            for (std::size_t k = 0; k < n - 1; ++k) {
                const double pkp1 = z * std::sqrt(2.0 / (k + 1.0)) * pk -
                                    std::sqrt(static_cast<double>(k) / (k + 1.0)) * pkm1;
                pkm1 = pk;
                pk = pkp1;
                sumsq += pk * pk;
            }
            // p_n and its derivative p_n' = sqrt(2n) p_{n-1}
            const double pn = z * std::sqrt(2.0 / n) * pk -
                              std::sqrt((n - 1.0) / n) * pkm1;
            const double dpn = std::sqrt(2.0 * n) * pk;
            const double dz = pn / dpn;
            z -= dz;
            if (std::abs(dz) < 1e-14 * (1.0 + std::abs(z))) break;
        }
        roots.push_back(z);
        const std::size_t hi = n - 1 - i;
        r.nodes[hi] = z;
        r.nodes[i] = -z;
        r.weights[hi] = 1.0 / sumsq;
        r.weights[i] = r.weights[hi];
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

std::mutex g_rule_mutex;

const Rule& cached_rule(std::map<std::size_t, Rule>& cache, std::size_t n,
                        Rule (*maker)(std::size_t)) {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, maker(n)).first;
    return it->second;
}

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    if (depth <= 0) {
        std::ostringstream msg;
        msg << "adaptive_simpson: depth cap hit on [" << a << "," << b
            << "], local error " << std::abs(diff) / 15.0 << " > " << tol;
        throw numerics_error(msg.str());
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
    static std::map<std::size_t, Rule> cache;
    return cached_rule(cache, n, make_gauss_legendre);
}

const Rule& gauss_hermite(std::size_t n) {
    static std::map<std::size_t, Rule> cache;
    return cached_rule(cache, n, make_gauss_hermite);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_level) {
    return tanh_sinh_ex(f, a, b, tol, max_level).value;
}

TsResult tanh_sinh_ex(const std::function<double(double)>& f, double a, double b,
                      double tol, int max_level) {
    if (a == b) return {0.0, 0.0, true};
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    // x(u) = c + hw * tanh(pi/2 sinh u); offsets from the endpoints are kept
    // in exponential form so that x - a (resp. b - x) stays accurate when it
    // underflows toward the endpoint.
    const double u_max = 3.8;
    auto eval_pair = [&](double u, double& acc) {
        const double s = M_PI_2 * std::sinh(u);
        const double ch = std::cosh(s);
        const double w = M_PI_2 * std::cosh(u) / (ch * ch);
        const double e2 = std::exp(-2.0 * s);  // u >= 0 so s >= 0
        const double off = 2.0 * hw * e2 / (1.0 + e2);  // b - x(u)
        const double xp = (off < hw) ? b - off : c + hw * std::tanh(s);
        const double xm = (off < hw) ? a + off : c - hw * std::tanh(s);
        double fp = f(xp), fm = f(xm);
        if (!std::isfinite(fp)) fp = 0.0;  // integrable endpoint blowups
        if (!std::isfinite(fm)) fm = 0.0;
        acc += w * (fp + (u > 0.0 ? fm : 0.0));
    };

    double h = 1.0;
    double acc = 0.0;
    eval_pair(0.0, acc);
    for (double u = h; u <= u_max; u += h) eval_pair(u, acc);
    double prev = hw * h * acc;
    TsResult res;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double u = h; u <= u_max; u += 2.0 * h) eval_pair(u, add);
        acc += add;
        const double cur = hw * h * acc;
        res.value = cur;
        res.error_estimate = std::abs(cur - prev);
        if (level >= 3 && res.error_estimate <= tol * (1.0 + std::abs(cur))) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

std::vector<double> graded_mesh(double a, double b, std::size_t m, double p,
                                bool toward_b) {
    std::vector<double> mesh;
    mesh.reserve(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(m);
        const double x = toward_b ? b - (b - a) * std::pow(1.0 - r, p)
                                  : a + (b - a) * std::pow(r, p);
        mesh.push_back(x);
    }
    mesh.front() = a;
    mesh.back() = b;
    return mesh;
}

double composite_gl(const std::function<double(double)>& f,
                    const std::vector<double>& mesh, std::size_t order) {
    const Rule& rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        const double lo = mesh[i], hi = mesh[i + 1];
        if (!(hi > lo)) continue;  // collapsed panel from extreme grading
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (std::size_t q = 0; q < order; ++q) {
            s += rule.weights[q] * f(mid + half * rule.nodes[q]);
        }
        total += s * half;
    }
    return total;
}

GradedResult integrate_power_transformed(
    const std::function<double(double, double)>& f_point_dist, double a, double b,
    double p, bool singular_at_b, double tol, std::size_t m0, std::size_t m_max,
    std::size_t order, double w_min) {
    GradedResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    const double length = b - a;
    const double span = 1.0 - w_min;
    const Rule& rule = gauss_legendre(order);
    auto pass = [&](std::size_t m) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double w_lo =
                w_min + span * static_cast<double>(i) / static_cast<double>(m);
            const double w_hi =
                w_min + span * static_cast<double>(i + 1) / static_cast<double>(m);
            const double mid = 0.5 * (w_lo + w_hi), half = 0.5 * (w_hi - w_lo);
            double s = 0.0;
            for (std::size_t q = 0; q < order; ++q) {
                const double w = mid + half * rule.nodes[q];
                const double dist = length * std::pow(w, p);
                const double x = singular_at_b ? b - dist : a + dist;
                const double jac = p * length * std::pow(w, p - 1.0);
                s += rule.weights[q] * f_point_dist(x, dist) * jac;
            }
            total += s * half;
        }
        return total;
    };
    double prev = pass(m0);
    res.value = prev;
    res.panels = m0;
    res.error_estimate = std::abs(prev);
    for (std::size_t m = 2 * m0; m <= m_max; m *= 2) {
        const double cur = pass(m);
        res.value = cur;
        res.error_estimate = std::abs(cur - prev);
        res.panels = m;
        if (res.error_estimate <= tol * (1.0 + std::abs(cur))) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}


}  // namespace spde::quad
