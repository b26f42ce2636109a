#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "summa/errors.hpp"
#include "summa/expression.hpp"
#include "summa/fourier.hpp"
#include "summa/quadrature.hpp"

namespace summa {

enum class Support { finite, infinite };

inline constexpr int infinite_smoothness = std::numeric_limits<int>::max();

// Φ(x) = ω(|x|). Finite support means ω vanishes for t > 1.
struct KernelSpec {
    std::string name;
    std::function<double(double)> omega;
    Support support = Support::finite;
    double decay_lambda = 0;  // infinite support: (1+t)^λ |ω(t)| ≤ A
    double decay_A = 0;
    int smoothness_p = 0;
    int moment_order_q = 0;
    bool smoothness_estimated = false;
    std::function<double(double)> phi_closed;  // empty when φ has no closed form
    std::string omega_text, phi_text;

    double omega_at(double t) const {
        t = std::abs(t);
        if (support == Support::finite && t > 1) return 0;
        return omega(t);
    }
};

namespace detail {

inline double sinc(double z) { return std::abs(z) < 1e-4 ? 1 - z * z / 6 : std::sin(z) / z; }

inline double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline KernelSpec finite_kernel(std::string name, std::function<double(double)> omega, int p, int q,
                                std::function<double(double)> phi, std::string omega_text, std::string phi_text) {
    KernelSpec k;
    k.name = std::move(name);
    k.omega = std::move(omega);
    k.support = Support::finite;
    k.smoothness_p = p;
    k.moment_order_q = q;
    k.smoothness_estimated = true;
    k.phi_closed = std::move(phi);
    k.omega_text = std::move(omega_text);
    k.phi_text = std::move(phi_text);
    return k;
}

inline KernelSpec infinite_kernel(std::string name, std::function<double(double)> omega, double A, int p,
                                  std::function<double(double)> phi, std::string omega_text, std::string phi_text) {
    KernelSpec k;
    k.name = std::move(name);
    k.omega = std::move(omega);
    k.support = Support::infinite;
    k.decay_lambda = 2;
    k.decay_A = A;
    k.smoothness_p = p;
    k.smoothness_estimated = true;
    k.phi_closed = std::move(phi);
    k.omega_text = std::move(omega_text);
    k.phi_text = std::move(phi_text);
    return k;
}

inline double sobolev_constant() {
    static const double c = [] {
        QuadConfig cfg;
        cfg.abs_tol = 1e-14;
        cfg.rel_tol = 1e-14;
        return 0.5 / integrate([](double t) { return t < 1 ? std::exp(-1 / (1 - t * t)) : 0.0; }, 0.0, 1.0, cfg);
    }();
    return c;
}

// sin z / z · Π_{i=1..m} [1 - (z/(iπ))^2]^{-1}, with the removable
// singularity at the nearest multiple of π cancelled analytically.
inline double raised_cosine_phi(int m, double z) {
    z = std::abs(z);
    const double pi = std::numbers::pi;
    const int j = static_cast<int>(std::lround(z / pi));
    double v = 1;
    if (j >= 1 && j <= m) {
        // sin z / (1 - (z/jπ)^2) = (-1)^{j+1} sinc(δ) (jπ)^2 / (jπ + z), δ = z - jπ
        const double d = z - j * pi;
        v = (j % 2 ? 1.0 : -1.0) * sinc(d) * (j * pi) * (j * pi) / (j * pi + z) / (z == 0 ? 1 : z);
    } else {
        v = sinc(z);
    }
    for (int i = 1; i <= m; ++i) {
        if (i == j) continue;
        const double u = z / (i * pi);
        v /= 1 - u * u;
    }
    return v;
}

}  // namespace detail

inline KernelSpec poly_kernel(int k) {
    if (k < 1) throw UnknownKernel("poly kernel needs k >= 1");
    const double c = detail::factorial(2 * k + 1) / (std::ldexp(1.0, 2 * k + 1) * detail::factorial(k) * detail::factorial(k));
    std::function<double(double)> phi;
    if (k == 1) {
        phi = [](double z) {
            z = std::abs(z);
            if (z < 0.05) return 1 - z * z / 10 + z * z * z * z / 280;
            return 3 / (z * z) * (std::sin(z) / z - std::cos(z));
        };
    } else {
        // 2c∫_0^1 (1-t^2)^k cos zt dt = Γ(k+3/2) (2/z)^{k+1/2} J_{k+1/2}(z)
        phi = [k](double z) {
            z = std::abs(z);
            if (z < 1e-6) return 1.0;
            const double nu = k + 0.5;
            return std::tgamma(nu + 1) * std::pow(2 / z, nu) * std::cyl_bessel_j(nu, z);
        };
    }
    return detail::finite_kernel(
        "poly_" + std::to_string(k), [c, k](double t) { return c * std::pow(1 - t * t, k); }, k, 0, phi,
        "c_k (1-t^2)^k, c_k = (2k+1)!/(2^(2k+1) (k!)^2), k=" + std::to_string(k),
        k == 1 ? "3/z^2 (sin z/z - cos z)" : "Gamma(k+3/2) (2/z)^(k+1/2) J_(k+1/2)(z)");
}

inline KernelSpec raised_cosine_kernel(int m) {
    if (m < 1) throw UnknownKernel("raised_cosine kernel needs m >= 1");
    const double c = std::ldexp(1.0, m - 1) * detail::factorial(m) * detail::factorial(m) / detail::factorial(2 * m);
    return detail::finite_kernel(
        "raised_cosine_" + std::to_string(m),
        [c, m](double t) { return c * std::pow(1 + std::cos(std::numbers::pi * t), m); }, 2 * m, 0,
        [m](double z) { return detail::raised_cosine_phi(m, z); },
        "2^(m-1) (m!)^2/(2m)! (1 + cos pi t)^m, m=" + std::to_string(m),
        "sin z/z prod_(i=1..m) [1 - (z/(i pi))^2]^(-1)");
}

inline std::vector<std::string> builtin_kernel_names() {
    return {"triangle", "quadratic", "poly_1",  "poly_2", "moment", "raised_cosine_1", "raised_cosine_2",
            "sobolev",  "fejer",     "poisson", "gauss",  "sech",   "sech2",           "laplace",
            "exp_cos"};
}

inline KernelSpec builtin(const std::string& name) {
    using detail::finite_kernel;
    using detail::infinite_kernel;
    const double pi = std::numbers::pi;
    if (name == "triangle")
        return finite_kernel(
            name, [](double t) { return 1 - t; }, 1, 0,
            [](double z) {
                const double s = detail::sinc(z / 2);
                return s * s;
            },
            "1 - t", "2 (1 - cos z)/z^2");
    if (name == "quadratic")
        return finite_kernel(
            name, [](double t) { return 1.5 * (1 - t) * (1 - t); }, 1, 0,
            [](double z) {
                z = std::abs(z);
                const double z2 = z * z;
                if (z < 0.1) return 1 - z2 / 20 + z2 * z2 / 840 - z2 * z2 * z2 / 60480;
                return 6 / z2 * (1 - std::sin(z) / z);
            },
            "3/2 (1 - t)^2", "6/z^2 (1 - sin z/z)");
    if (name == "poly_k") return poly_kernel(1);
    if (name.rfind("poly_", 0) == 0) {
        try {
            std::size_t used = 0;
            const int k = std::stoi(name.substr(5), &used);
            if (used == name.size() - 5) return poly_kernel(k);
        } catch (const std::logic_error&) {
        }
        throw UnknownKernel("unknown kernel '" + name + "'");
    }
    if (name == "moment") {
        KernelSpec k = finite_kernel(
            name, [pi](double t) { return pi * pi / 4 * (1 - t) * std::cos(pi * t); }, 1, 1,
            [pi](double z) {
                z = std::abs(z);
                const double u = z / pi;
                // cos(z/2)/(1 - z/π) = (π/2) sinc((z-π)/2)
                const double ratio = pi / 2 * detail::sinc((z - pi) / 2);
                return (1 + u * u) / ((1 + u) * (1 + u)) * ratio * ratio;
            },
            "pi^2/4 (1 - t) cos(pi t)", "(1 + (z/pi)^2)/(1 + z/pi)^2 (cos(z/2)/(1 - z/pi))^2");
        return k;
    }
    if (name == "raised_cosine") return raised_cosine_kernel(1);
    if (name.rfind("raised_cosine_", 0) == 0) {
        try {
            std::size_t used = 0;
            const int m = std::stoi(name.substr(14), &used);
            if (used == name.size() - 14) return raised_cosine_kernel(m);
        } catch (const std::logic_error&) {
        }
        throw UnknownKernel("unknown kernel '" + name + "'");
    }
    if (name == "sobolev") {
        const double c = detail::sobolev_constant();
        KernelSpec k = finite_kernel(
            name, [c](double t) { return t < 1 ? c * std::exp(-1 / (1 - t * t)) : 0.0; }, infinite_smoothness, 0,
            {}, "c0 exp(-1/(1 - t^2)), c0 = " + std::to_string(c), "quadrature");
        k.smoothness_estimated = false;
        return k;
    }
    if (name == "fejer")
        return infinite_kernel(
            name,
            [pi](double t) {
                const double s = detail::sinc(t / 2);
                return s * s / (2 * pi);
            },
            1.2, infinite_smoothness, [](double z) { return std::max(0.0, 1 - std::abs(z)); },
            "(2/pi) sin^2(t/2)/t^2", "max(0, 1 - |z|)");
    if (name == "poisson")
        return infinite_kernel(
            name, [pi](double t) { return 1 / (pi * (1 + t * t)); }, 0.67, infinite_smoothness,
            [](double z) { return std::exp(-std::abs(z)); }, "1/(pi (1 + t^2))", "exp(-z)");
    if (name == "gauss")
        return infinite_kernel(
            name, [pi](double t) { return std::exp(-t * t) / std::sqrt(pi); }, 1.06, infinite_smoothness,
            [](double z) { return std::exp(-z * z / 4); }, "exp(-t^2)/sqrt(pi)", "exp(-z^2/4)");
    if (name == "sech")
        return infinite_kernel(
            name, [pi](double t) { return 0.5 / std::cosh(pi * t / 2); }, 0.92, infinite_smoothness,
            [](double z) { return 1 / std::cosh(z); }, "1/(2 cosh(pi t/2))", "1/cosh z");
    if (name == "sech2")
        return infinite_kernel(
            name,
            [pi](double t) {
                const double c = std::cosh(pi * t / 2);
                return pi / (4 * c * c);
            },
            1.13, infinite_smoothness,
            [](double z) {
                z = std::abs(z);
                if (z < 1e-4) return 1 - z * z / 6;
                if (z > 20) return 2 * z * std::exp(-z) / (1 - std::exp(-2 * z));
                return z / std::sinh(z);
            },
            "pi/(4 cosh^2(pi t/2))", "z/sinh z");
    if (name == "laplace")
        return infinite_kernel(
            name, [](double t) { return 0.5 * std::exp(-t); }, 0.78, 1,
            [](double z) { return 1 / (1 + z * z); }, "exp(-t)/2", "1/(1 + z^2)");
    if (name == "exp_cos")
        return infinite_kernel(
            name, [](double t) { return std::exp(-t) * std::cos(t); }, 1.28, 1,
            [](double z) {
                const double u = z * z / 2;
                return (1 + u) / (1 + u * u);
            },
            "exp(-t) cos t", "(1 + z^2/2)/(1 + z^4/4)");
    throw UnknownKernel("unknown kernel '" + name + "'");
}

// User kernel from an expression in t (t >= 0).
inline KernelSpec custom_kernel(const std::string& name, Support support, const std::string& omega_expr,
                                double lambda, double A, int p, int q) {
    const Expression e = Expression::parse(omega_expr, {"t"});
    KernelSpec k;
    k.name = name;
    k.omega = [e](double t) { return e(t); };
    k.support = support;
    k.decay_lambda = lambda;
    k.decay_A = A;
    k.smoothness_p = p;
    k.moment_order_q = q;
    k.omega_text = omega_expr;
    k.phi_text = "quadrature";
    if (support == Support::infinite && !(lambda > 1))
        throw DomainError("custom kernel '" + name + "': infinite support needs lambda > 1");
    return k;
}

// φ(z) = 2∫_0^∞ ω(t) cos zt dt by quadrature.
inline double phi_quadrature(const KernelSpec& k, double z, const QuadConfig& cfg = {}) {
    z = std::abs(z);
    auto g = [&](double t) { return k.omega(t) * std::cos(z * t); };
    if (k.support == Support::finite) return 2 * integrate(g, 0.0, 1.0, cfg);
    ImproperOptions opt;
    // A slowly decaying tail is only monotone when nothing oscillates.
    if (z == 0) opt.decay_lambda = k.decay_lambda;
    return 2 * integrate_improper(g, 0.0, cfg, opt);
}

inline double phi(const KernelSpec& k, double z, const QuadConfig& cfg = {}) {
    if (k.phi_closed) return k.phi_closed(z);
    return phi_quadrature(k, z, cfg);
}

inline ImproperOptions kernel_tail(const KernelSpec& k) {
    ImproperOptions opt;
    opt.decay_lambda = k.decay_lambda;
    return opt;
}

struct ValidationReport {
    double normalization_residual = 0;
    int decay_violations = 0;
    double worst_decay_ratio = 0;  // max (1+t)^λ|ω(t)| / A over the grid
    std::vector<double> moment_residuals;
    bool passed = false;
    std::vector<std::string> messages;
};

inline std::vector<double> check_moments(const KernelSpec& k, int q, const QuadConfig& cfg = {}) {
    if (k.support != Support::finite) throw DomainError("check_moments: kernel '" + k.name + "' has infinite support");
    if (q < 1) throw DomainError("check_moments: moment orders start at 1");
    std::vector<double> m;
    for (int j = 1; j <= q; ++j)
        m.push_back(integrate([&](double t) { return std::pow(t, j) * k.omega(t); }, 0.0, 1.0, cfg));
    return m;
}

inline ValidationReport validate(const KernelSpec& k, const QuadConfig& cfg = {}) {
    ValidationReport r;
    double mass = 0;
    try {
        mass = k.support == Support::finite ? 2 * integrate(k.omega, 0.0, 1.0, cfg)
                                            : 2 * integrate_improper(k.omega, 0.0, cfg, kernel_tail(k));
        r.normalization_residual = std::abs(mass - 1);
    } catch (const Error& e) {
        r.normalization_residual = std::numeric_limits<double>::infinity();
        r.messages.push_back(std::string("normalization: ") + e.what());
    }
    if (r.normalization_residual > 1e-8) r.messages.push_back("normalization residual " + std::to_string(r.normalization_residual));
    if (k.support == Support::infinite) {
        if (!(k.decay_lambda > 1)) r.messages.push_back("decay exponent must exceed 1");
        std::vector<double> grid;
        for (int i = 0; i <= 400; ++i) grid.push_back(i * 0.05);
        for (int i = 0; i <= 200; ++i) grid.push_back(std::pow(10.0, -3 + 9.0 * i / 200));
        for (double t : grid) {
            const double v = std::pow(1 + t, k.decay_lambda) * std::abs(k.omega(t));
            const double ratio = k.decay_A > 0 ? v / k.decay_A : std::numeric_limits<double>::infinity();
            r.worst_decay_ratio = std::max(r.worst_decay_ratio, ratio);
            if (ratio > 1) ++r.decay_violations;
        }
        if (r.decay_violations) r.messages.push_back(std::to_string(r.decay_violations) + " decay bound violations");
    } else if (k.moment_order_q > 0) {
        for (double m : check_moments(k, k.moment_order_q, cfg)) r.moment_residuals.push_back(std::abs(m));
        for (double m : r.moment_residuals)
            if (m > 1e-8) r.messages.push_back("nonzero moment " + std::to_string(m));
    }
    r.passed = r.messages.empty();
    return r;
}

inline double delta_eval(const KernelSpec& k, double r, double x) {
    if (!(r > 0)) throw DomainError("delta_eval: r must be positive");
    return k.omega_at(x / r) / r;
}

// S_r(f; x) = ∫_0^∞ [f(x + rt) + f(x - rt)] ω(t) dt
template <class F>
double smooth(F&& f, const KernelSpec& k, double r, double x, const QuadConfig& cfg = {}) {
    if (!(r > 0)) throw DomainError("smooth: r must be positive");
    auto g = [&](double t) { return (f(x + r * t) + f(x - r * t)) * k.omega(t); };
    if (k.support == Support::finite) return integrate(g, 0.0, 1.0, cfg);
    return integrate_improper(g, 0.0, cfg, kernel_tail(k));
}

// (r, x) ↦ ∫ δ^{k1}_r(x - t) δ^{k2}_r(t) dt
inline std::function<double(double, double)> convolve(const KernelSpec& k1, const KernelSpec& k2,
                                                      const QuadConfig& cfg = {}) {
    return [k1, k2, cfg](double r, double x) {
        if (!(r > 0)) throw DomainError("convolve: r must be positive");
        auto g = [&](double t) { return delta_eval(k1, r, x - t) * delta_eval(k2, r, t); };
        // Breakpoints at both peaks and geometrically outward from them, so a
        // long interval cannot hide a peak between quadrature nodes.
        auto pieces = [&](double lo, double hi) {
            std::vector<double> pts{lo, hi};
            for (double c : {0.0, x})
                for (double d = 0; d < hi - lo; d = d == 0 ? r : 4 * d)
                    for (double p : {c - d, c + d})
                        if (p > lo && p < hi) pts.push_back(p);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            double s = 0;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += integrate(g, pts[i], pts[i + 1], cfg);
            return s;
        };
        const bool f1 = k1.support == Support::finite, f2 = k2.support == Support::finite;
        if (f1 || f2) {
            double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
            if (f1) lo = std::max(lo, x - r), hi = std::min(hi, x + r);
            if (f2) lo = std::max(lo, -r), hi = std::min(hi, r);
            if (!(lo < hi)) return 0.0;
            return pieces(lo, hi);
        }
        ImproperOptions opt;
        opt.decay_lambda = k1.decay_lambda + k2.decay_lambda;  // the product of both tails
        const double lo = std::min(0.0, x), hi = std::max(0.0, x);
        const double right = integrate_improper([&](double u) { return g(hi + r * u) * r; }, 0.0, cfg, opt);
        const double left = integrate_improper([&](double u) { return g(lo - r * u) * r; }, 0.0, cfg, opt);
        return pieces(lo, hi) + left + right;
    };
}

struct PeriodicKernel {
    KernelSpec base;
    double r = 1;
};

// δ*_r(x) = (1/r) Σ_k ω(|x + 2kπ|/r)
inline double periodize(const PeriodicKernel& pk, double x) {
    const double r = pk.r, pi = std::numbers::pi;
    if (!(r > 0)) throw DomainError("periodize: r must be positive");
    x = std::remainder(x, 2 * pi);  // into [-π, π]
    const auto& k = pk.base;
    auto term = [&](long j) { return k.omega_at((x + 2 * pi * j) / r); };
    if (k.support == Support::finite) {
        // Only images within distance r contribute; for r ≤ π that is the j = 0 term alone.
        const long J = static_cast<long>(std::ceil((r + pi) / (2 * pi)));
        double s = term(0);
        for (long j = 1; j <= J; ++j) s += term(j) + term(-j);
        return s / r;
    }
    // Truncate where the tail bound A (r/(r + 2Kπ - π))^λ / r drops below 1e-12,
    // then remove the leading K^{1-λ} tail term by combining K and 2K.
    const double lam = k.decay_lambda, A = k.decay_A;
    long K = 1;
    while (A * std::pow(r / (r + 2 * K * pi - pi), lam) / r >= 1e-12 && K < (1L << 24)) K *= 2;
    double sK = term(0);
    for (long j = 1; j <= K; ++j) sK += term(j) + term(-j);
    double s2K = sK;
    for (long j = K + 1; j <= 2 * K; ++j) s2K += term(j) + term(-j);
    const double q = std::pow(2.0, lam - 1);
    return (q * s2K - sK) / (q - 1) / r;
}

// a0/2 + Σ φ(λ_k r)(a_k cos λ_k x + b_k sin λ_k x)
inline double periodic_smooth(const TrigSeries& s, const KernelSpec& k, double r, double x, const QuadConfig& cfg = {}) {
    if (!(r > 0)) throw DomainError("periodic_smooth: r must be positive");
    return detail::weighted_sum(s, s.N(), x, [&](std::size_t j) { return phi(k, s.lambda(j) * r, cfg); });
}

}  // namespace summa
