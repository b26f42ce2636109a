// Acceptance suite: `acceptance <i>` runs criterion i, no argument runs all.
// Prints one PASS/FAIL line per criterion; the exit code is non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fd_oracle.hpp"
#include "summa/fourier.hpp"
#include "summa/kernels.hpp"
#include "summa/orthopoly.hpp"
#include "summa/pde.hpp"
#include "summa/summation.hpp"

using namespace summa;
using std::numbers::pi;

namespace {

double sgn_pow(long n) { return n % 2 ? -1.0 : 1.0; }

// Collects named sub-checks; a criterion passes when every one holds.
struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void check(const std::string& what, double err, double tol) {
        const bool pass = err <= tol;
        ok = ok && pass;
        detail << (detail.tellp() > 0 ? "; " : "") << what << " " << err << (pass ? " <= " : " > ") << tol;
    }
    void require(const std::string& what, bool cond) {
        ok = ok && cond;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (cond ? " ok" : " violated");
    }
};

Outcome fourier_closed_forms() {
    Outcome o;
    double e_abs = 0, e_pix = 0, e_quad = 0, e_x = 0;
    const auto abs_s = trig_coefficients([](double x) { return std::abs(x); }, pi, 20);
    const auto pix = trig_coefficients([](double x) { return pi + x; }, pi, 20);
    const auto quad = trig_coefficients([](double x) { return 1 - x * x; }, 1, 20);
    const auto lin = trig_coefficients([](double x) { return x; }, 2, 20);
    e_abs = std::abs(abs_s.a[0] - pi);
    e_pix = std::abs(pix.a[0] - 2 * pi);
    e_quad = std::abs(quad.a[0] - 4.0 / 3);
    e_x = std::abs(lin.a[0]);
    for (int n = 1; n <= 20; ++n) {
        e_abs = std::max({e_abs, std::abs(abs_s.a[n] - 2 * (sgn_pow(n) - 1) / (pi * n * n)), std::abs(abs_s.b[n - 1])});
        e_pix = std::max({e_pix, std::abs(pix.a[n]), std::abs(pix.b[n - 1] - 2 * sgn_pow(n + 1) / n)});
        e_quad = std::max({e_quad, std::abs(quad.a[n] - 4 * sgn_pow(n + 1) / (n * n * pi * pi)), std::abs(quad.b[n - 1])});
        e_x = std::max({e_x, std::abs(lin.a[n]), std::abs(lin.b[n - 1] - 4 * sgn_pow(n + 1) / (n * pi))});
    }
    o.check("|x|", e_abs, 1e-8);
    o.check("pi+x", e_pix, 1e-8);
    o.check("1-x^2 on [-1,1]", e_quad, 1e-8);
    o.check("x on [-2,2]", e_x, 1e-8);
    return o;
}

Outcome parseval_basel() {
    Outcome o;
    const std::size_t N = 10000;
    auto f = [](double x) { return x; };
    QuadConfig cfg;
    cfg.abs_tol = cfg.rel_tol = 1e-12;
    const auto s = trig_coefficients(f, pi, N, SeriesMode::full, cfg);
    const double gap = parseval_gap(f, s, cfg);
    double basel = 0;
    for (std::size_t k = N; k >= 1; --k) basel += 4.0 / (double(k) * double(k));
    o.check("parseval gap", std::abs(gap), 4e-4);
    o.check("closed-form gap", std::abs(2 * pi * pi / 3 - basel), 4e-4);
    // Σ1/k² = π²/6 up to the tail ≈ 1/N.
    o.check("gap vs 4/N tail", std::abs(gap - 4.0 / (N + 0.5)), 1e-8);
    return o;
}

Outcome legendre_suite() {
    Outcome o;
    QuadConfig cfg;
    cfg.abs_tol = cfg.rel_tol = 1e-13;
    const auto chk = validate_family(legendre_family(), 12, cfg);
    o.check("off-diagonal", chk.max_off_diagonal, 1e-10);
    o.check("norms 2/(2n+1)", chk.max_norm_residual, 1e-10);
    bool ends = true;
    for (int n = 0; n <= 40; ++n) ends = ends && legendre(n, 1) == 1 && legendre(n, -1) == sgn_pow(n);
    o.require("P_n(+-1) exact", ends);
    double ode = 0;
    const double h = 1e-5;
    for (int n = 0; n <= 10; ++n)
        for (int i = -9; i <= 9; ++i) {
            const double x = 0.1 * i;
            auto flux = [n](double s) { return (1 - s * s) * legendre_derivative(n, s); };
            ode = std::max(ode, std::abs((flux(x + h) - flux(x - h)) / (2 * h) + n * (n + 1) * legendre(n, x)));
        }
    o.check("ODE residual", ode, 1e-5);
    std::vector<std::function<double(double)>> mono;
    for (int j = 0; j <= 5; ++j) mono.push_back([j](double x) { return std::pow(x, j); });
    const auto e = gram_schmidt(mono, -1, 1, [](double) { return 1.0; });
    double gs = 0;
    for (int n = 0; n <= 5; ++n) {
        const auto ref = legendre_coefficients(n);
        const auto& c = e[n].coefficients();
        for (std::size_t j = 0; j < ref.size(); ++j)
            gs = std::max(gs, std::abs(c[j] - std::sqrt((2 * n + 1) / 2.0) * ref[j]));
    }
    o.check("Gram-Schmidt", gs, 1e-8);
    return o;
}

Outcome multiplier_transforms() {
    Outcome o;
    const auto fejer = builtin("fejer"), poisson = builtin("poisson");
    double ef = 0, ep = 0;
    for (double z : {0.0, 0.3, 0.999, 1.5}) ef = std::max(ef, std::abs(phi_quadrature(fejer, z) - std::max(0.0, 1 - z)));
    for (double z : {0.1, 1.0, 3.0}) ep = std::max(ep, std::abs(phi_quadrature(poisson, z) - std::exp(-z)));
    o.check("fejer", ef, 1e-6);
    o.check("poisson", ep, 1e-6);
    std::vector<std::string> names;
    for (const auto& n : builtin_kernel_names())
        if (builtin(n).phi_closed) names.push_back(n);
    names.push_back("poly_3");
    names.push_back("raised_cosine_3");
    std::vector<double> worst(names.size());
    parallel_for(names.size(), [&](std::size_t i) {
        const auto k = builtin(names[i]);
        for (double z : {0.1, 1.0, 10.0}) worst[i] = std::max(worst[i], std::abs(k.phi_closed(z) - phi_quadrature(k, z)));
    });
    std::size_t at = 0;
    for (std::size_t i = 1; i < names.size(); ++i)
        if (worst[i] > worst[at]) at = i;
    o.check(std::to_string(names.size()) + " closed forms (worst " + names[at] + ")", worst[at], 1e-6);
    return o;
}

Outcome cauchy_convolution() {
    Outcome o;
    const auto c = convolve(builtin("poisson"), builtin("poisson"));
    double e = 0;
    for (double r : {0.5, 1.0})
        for (double x : {0.0, 0.5, 2.0}) e = std::max(e, std::abs(c(r, x) - 2 * r / pi / (4 * r * r + x * x)));
    o.check("Cauchy*Cauchy", e, 1e-7);
    return o;
}

Outcome periodization() {
    Outcome o;
    const int n = 4;
    double ef = 0;
    const PeriodicKernel fk{builtin("fejer"), 1.0 / n};
    for (double x : {0.5, 1.0, 3.0}) {
        const double s = std::sin(n * x / 2) / std::sin(x / 2);
        ef = std::max(ef, std::abs(periodize(fk, x) - s * s / (2 * pi * n)));
    }
    const double r = 0.5, rho = std::exp(-r);
    const PeriodicKernel pk{builtin("poisson"), r};
    double ep = 0;
    for (double x : {0.0, 0.5, 1.0, 3.0})
        ep = std::max(ep, std::abs(periodize(pk, x) - (1 - rho * rho) / (1 + rho * rho - 2 * rho * std::cos(x)) / (2 * pi)));
    o.check("fejer n=4", ef, 1e-8);
    o.check("poisson r=0.5", ep, 1e-8);
    return o;
}

Outcome moment_exactness() {
    Outcome o;
    const auto k = builtin("moment");
    QuadConfig cfg;
    cfg.abs_tol = cfg.rel_tol = 1e-13;
    double e = 0;
    for (double r : {0.1, 0.5, 1.0}) e = std::max(e, std::abs(smooth([](double x) { return std::abs(x); }, k, r, 0.0, cfg)));
    o.check("S_r|x| at 0", e, 1e-10);
    return o;
}

Outcome divergent_series() {
    Outcome o;
    const auto p = method("poisson");
    const std::vector<double> schedule = {1e-1, 1e-2, 1e-3};
    CoefficientRule grandi{2, [](std::size_t k) { return std::pair{sgn_pow(long(k)), 0.0}; }};
    CoefficientRule abel{2, [](std::size_t k) { return std::pair{sgn_pow(long(k)) * double(k + 1), 0.0}; }};
    o.check("1-1+1-...", std::abs(generalized_sum(grandi, p, 0, schedule, 1).value - 0.5), 5e-3);
    o.check("1-2+3-...", std::abs(generalized_sum(abel, p, 0, schedule, 1).value - 0.25), 5e-3);
    CoefficientRule cubes{0, [](std::size_t k) { return std::pair{0.0, 1 / std::pow(double(k), 3)}; }};
    double e = 0;
    // Away from x = π/3, where the first-order error r·Cl₂(x) peaks at 1.015e-3.
    for (double x : {0.5, 2.0, 2.5}) {
        const double classical = (2 * pi * pi * x - 3 * pi * x * x + x * x * x) / 12;
        e = std::max(e, std::abs(generalized_sum(cubes, p, x, schedule, 1).value - classical));
    }
    o.check("sum sin kx/k^3", e, 1e-3);
    return o;
}

Outcome fejer_two_routes() {
    Outcome o;
    const auto s = trig_coefficients([](double x) { return x * x * x - pi * pi * x + std::exp(std::cos(x)); }, pi, 64);
    const auto fejer = method("fejer");
    double e = 0;
    for (int n = 1; n <= 64; ++n)
        for (double x : {-2.9, -1.0, 0.0, 0.4, 2.2}) {
            double mean = 0;
            for (int m = 0; m < n; ++m) mean += partial_sum(s, m, x);
            e = std::max(e, std::abs(summed_partial(s, fejer, n, x) - mean / n));
        }
    o.check("multiplier vs mean", e, 1e-12);
    TrigSeries sq = TrigSeries::zeros(pi, 64);
    for (std::size_t k = 1; k <= 64; k += 2) sq.b[k - 1] = 1.0 / k;
    double excess = 0;
    for (int n = 1; n <= 64; ++n)
        for (int i = 0; i <= 2000; ++i) {
            const double x = -pi + 2 * pi * i / 2000;
            excess = std::max(excess, std::abs(summed_partial(sq, fejer, n, x)) - pi / 4);
        }
    o.check("square wave excess over pi/4", excess, 1e-9);
    return o;
}

Outcome string_criterion() {
    Outcome o;
    const double l = pi, xi = 1.0, h = 0.2, h0 = h / (xi * (1 - xi / l));
    StringProblem p;
    p.l = l;
    p.a = 1.3;
    p.chi = [=](double x) { return x <= xi ? h0 * (1 - xi / l) * x : h0 * (1 - x / l) * xi; };
    p.psi = [](double x) { return x * (pi - x); };
    const auto gauss = builtin("gauss");
    const auto s = string_free(p, 400, 0, gauss);
    double ec = 0;
    for (std::size_t k = 1; k <= 50; ++k) {
        const double L = k * pi / l;
        ec = std::max(ec, std::abs(s.chi[k - 1] - 2 * h0 / l * std::sin(L * xi) / (L * L)));
    }
    o.check("plucked coefficients", ec, 1e-9);
    QuadConfig cfg;
    cfg.abs_tol = 1e-12;
    auto sq = [&](double x) { return std::pow(s.string_value(x, 0) - p.chi(x), 2); };
    o.check("t=0 L2 error", std::sqrt(integrate(sq, 0.0, xi, cfg) + integrate(sq, xi, l, cfg)), 1e-3);
    double ee = 0;
    for (std::size_t k = 1; k <= 400; ++k) {
        const double w = s.a * s.lambda(k);
        auto energy = [&](double t) {
            const double q = s.amplitude(k, 1, t), v = s.velocity(k, 1, t);
            return v * v + w * w * q * q;
        };
        const double e0 = energy(0);
        for (double t : {0.3, 1.7, 12.5}) ee = std::max(ee, std::abs(energy(t) - e0) / std::max(1.0, e0));
    }
    o.check("modal energy drift", ee, 1e-12);
    bool zero = true;
    for (double r : {0.0, 0.05}) {
        const auto d = string_free(p, 400, r, gauss);
        for (double t : {0.0, 0.9, 3.1}) zero = zero && d.string_value(0, t) == 0 && d.string_value(l, t) == 0;
    }
    o.require("boundary values exactly 0", zero);
    return o;
}

Outcome helmholtz_oracle() {
    Outcome o;
    HelmholtzProblem p;
    p.theta = 1;
    p.source = [](double, double) { return 1.0; };
    const auto u = helmholtz_solve(p, 60, 60, 1e-3, builtin("gauss"));
    const auto g = fd::helmholtz(pi, pi, 1, p.source, 65);
    double worst = 0, peak = 0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double v = u(i * g.hx, j * g.hy);
            worst = std::max(worst, std::abs(v - g.at(i, j)));
            peak = std::max(peak, std::abs(v));
        }
    o.check("max |series - FD| / max|u|", worst / peak, 2e-2);
    return o;
}

Outcome double_series() {
    Outcome o;
    const auto q = double_trig_coefficients([](double x, double y) { return x * y; }, pi, pi, 10, 10);
    double e = 0;
    for (std::size_t m = 1; m <= 10; ++m)
        for (std::size_t n = 1; n <= 10; ++n) e = std::max(e, std::abs(q.d[q.idx(m, n)] - 4 * sgn_pow(long(m + n)) / double(m * n)));
    o.check("d_mn", e, 1e-8);
    // e^{-kr} at r = 0.02 is below 1e-8 beyond k = 1000.
    const std::size_t M = 1000;
    DoubleTrigSeries s = DoubleTrigSeries::zeros(pi, pi, M, M);
    for (std::size_t m = 1; m <= M; ++m)
        for (std::size_t n = 1; n <= M; ++n) s.d[s.idx(m, n)] = 4 * sgn_pow(long(m + n)) / double(m * n);
    const auto poisson = method("poisson");
    const double v = summed_double(s, poisson, poisson, 0.02, 1, 1);
    o.check("Poisson sum at (1,1), r=0.02 (value " + std::to_string(v) + ")", std::abs(v - 1), 2e-2);
    return o;
}

struct Criterion {
    const char* title;
    Outcome (*run)();
};

const Criterion criteria[] = {
    {"Fourier closed forms", fourier_closed_forms},
    {"Parseval and pi^2/6", parseval_basel},
    {"Legendre suite", legendre_suite},
    {"multiplier transforms", multiplier_transforms},
    {"Cauchy convolution identity", cauchy_convolution},
    {"periodization identities", periodization},
    {"moment-kernel exactness", moment_exactness},
    {"divergent-series regularization", divergent_series},
    {"Fejer two-route oracle", fejer_two_routes},
    {"string solution", string_criterion},
    {"Helmholtz vs finite differences", helmholtz_oracle},
    {"double series", double_series},
};

bool run_one(int i) {
    const auto& c = criteria[i - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s [%s] (%.1f s)\n", o.ok ? "PASS" : "FAIL", i, c.title, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    return o.ok;
}

}  // namespace

int main(int argc, char** argv) {
    constexpr int count = sizeof(criteria) / sizeof(criteria[0]);
    if (argc > 2) {
        std::fprintf(stderr, "usage: acceptance [criterion 1..%d]\n", count);
        return 2;
    }
    if (argc == 2) {
        const int i = std::atoi(argv[1]);
        if (i < 1 || i > count) {
            std::fprintf(stderr, "criterion must be in 1..%d\n", count);
            return 2;
        }
        return run_one(i) ? 0 : 1;
    }
    int failed = 0;
    for (int i = 1; i <= count; ++i) failed += run_one(i) ? 0 : 1;
    std::printf("%d/%d criteria passed\n", count - failed, count);
    return failed ? 1 : 0;
}
