#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "summa/quadrature.hpp"

using namespace summa;
using std::numbers::pi;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

struct Poly {
    std::vector<double> c;
    double operator()(double x) const {
        double v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }
};

Poly random_poly(std::mt19937& rng, int degree) {
    std::uniform_real_distribution<double> u(-2, 2);
    Poly p;
    for (int i = 0; i <= degree; ++i) p.c.push_back(u(rng));
    return p;
}

}  // namespace

TEST(Integrate, SineSquaredQuarterPeriod) {
    EXPECT_NEAR(integrate([](double x) { return std::sin(x) * std::sin(x); }, 0, pi / 2), pi / 4, 1e-12);
}

TEST(Integrate, ZeroIntegrand) { EXPECT_EQ(integrate([](double) { return 0.0; }, 0, 1), 0.0); }

TEST(Integrate, OddProductOfLegendrePolynomials) {
    auto p2 = [](double x) { return 0.5 * (3 * x * x - 1); };
    auto p3 = [](double x) { return 0.5 * (5 * x * x * x - 3 * x); };
    EXPECT_NEAR(integrate([&](double x) { return p2(x) * p3(x); }, -1, 1), 0, 1e-10);
}

TEST(Integrate, WallisIntegrals) {
    QuadConfig cfg;
    for (int m = 1; m <= 5; ++m) {
        const double exact = factorial(2 * m) / (std::pow(4.0, m) * factorial(m) * factorial(m)) * pi / 2;
        const double v = integrate([m](double x) { return std::pow(std::sin(x), 2 * m); }, 0, pi / 2, cfg);
        EXPECT_NEAR(v, exact, cfg.abs_tol) << "m=" << m;
    }
}

TEST(Integrate, Linearity) {
    std::mt19937 rng(7);
    QuadConfig cfg;
    for (int trial = 0; trial < 20; ++trial) {
        const Poly f = random_poly(rng, 6), g = random_poly(rng, 9);
        const double al = 1.7, be = -0.3;
        const double lhs = integrate([&](double x) { return al * f(x) + be * g(x); }, -1.3, 2.1, cfg);
        const double rhs = al * integrate(f, -1.3, 2.1, cfg) + be * integrate(g, -1.3, 2.1, cfg);
        EXPECT_NEAR(lhs, rhs, 2 * cfg.abs_tol * std::max(1.0, std::abs(lhs)));
    }
}

TEST(Integrate, IntervalAdditivity) {
    QuadConfig cfg;
    auto f = [](double x) { return std::exp(-x) * std::cos(3 * x) + std::abs(x - 0.4); };
    for (double c : {-0.5, 0.0, 0.4, 1.2}) {
        const double whole = integrate(f, -1, 2, cfg);
        const double split = integrate(f, -1, c, cfg) + integrate(f, c, 2, cfg);
        EXPECT_NEAR(whole, split, 2 * cfg.abs_tol) << "c=" << c;
    }
}

TEST(Integrate, ReversedLimitsFlipSign) {
    auto f = [](double x) { return x * x; };
    EXPECT_NEAR(integrate(f, 1, 0), -1.0 / 3, 1e-14);
}

TEST(Integrate, InverseSqrtEndpointSingularities) {
    EXPECT_NEAR(integrate([](double x) { return 1 / std::sqrt(1 - x * x); }, -1, 1), pi, 1e-9);
    EXPECT_NEAR(integrate([](double x) { return std::log(x); }, 0, 1), -1, 1e-9);
}

TEST(Integrate, NonIntegrableSingularityThrows) {
    EXPECT_THROW(integrate([](double x) { return 1 / x; }, 0, 1), NonConvergence);
}

TEST(Integrate, ShallowDepthCapThrows) {
    QuadConfig cfg;
    cfg.max_depth = 2;
    EXPECT_THROW(integrate([](double x) { return std::abs(x - 0.3); }, 0, 1, cfg), NonConvergence);
}

TEST(Integrate, InvalidConfigRejected) {
    QuadConfig cfg;
    cfg.abs_tol = 0;
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, cfg), DomainError);
    cfg = {};
    cfg.max_depth = 0;
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, cfg), DomainError);
}

TEST(Improper, InverseSquare) {
    EXPECT_NEAR(integrate_improper([](double x) { return 1 / (x * x); }, 1), 1, 1e-8);
    ImproperOptions opt;
    opt.decay_lambda = 2;
    EXPECT_NEAR(integrate_improper([](double x) { return 1 / (x * x); }, 1, {}, opt), 1, 1e-10);
}

TEST(Improper, GaussianHalfLine) {
    EXPECT_NEAR(integrate_improper([](double t) { return std::exp(-t * t); }, 0), std::sqrt(pi) / 2, 1e-10);
}

TEST(Improper, DirichletIntegralIsSlow) {
    QuadConfig cfg;
    cfg.tail_cutoff_tol = 1e-4;
    auto sinc = [](double x) { return x == 0 ? 1.0 : std::sin(x) / x; };
    EXPECT_NEAR(integrate_improper(sinc, 0, cfg), pi / 2, 1e-3);
}

TEST(Improper, BudgetExhaustionThrows) {
    ImproperOptions opt;
    opt.max_doublings = 5;
    EXPECT_THROW(integrate_improper([](double x) { return 1 / (1 + x); }, 0, {}, opt), NonConvergence);
}

TEST(Rect2d, SeparableSines) {
    EXPECT_NEAR(integrate_rect2d([](double x, double y) { return std::sin(x) * std::sin(y); }, 0, pi, 0, pi), 4,
                1e-9);
}

TEST(Rect2d, WeightedSines) {
    auto f = [](double x, double y) { return x * y * std::sin(x) * std::sin(y); };
    // Each factor integrates to 2π.
    EXPECT_NEAR(integrate_rect2d(f, -pi, pi, -pi, pi), 4 * pi * pi, 1e-8);
}

TEST(Rect2d, Zero) { EXPECT_EQ(integrate_rect2d([](double, double) { return 0.0; }, 0, 1, 0, 1), 0.0); }

TEST(GaussLegendre, IntegratesHighDegreeExactly) {
    const auto& g = gauss32();
    double s = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 62);
    EXPECT_NEAR(s, 2.0 / 63, 1e-15);
    const auto g5 = gauss_legendre(5);
    EXPECT_NEAR(g5.x[2], 0.0, 0.0);
    EXPECT_NEAR(g5.w[2], 128.0 / 225, 1e-15);
}

TEST(TrigMoments, MatchPerHarmonicQuadrature) {
    auto f = [](double x) { return x < 0.7 ? std::exp(x) : -x * x; };
    const std::size_t N = 40;
    const auto m = trig_moments(f, -pi, pi, 1.0, N);
    for (std::size_t k = 0; k <= N; k += 7) {
        const double c = integrate([&](double x) { return f(x) * std::cos(k * x); }, -pi, 0.7) +
                         integrate([&](double x) { return f(x) * std::cos(k * x); }, 0.7, pi);
        const double s = integrate([&](double x) { return f(x) * std::sin(k * x); }, -pi, 0.7) +
                         integrate([&](double x) { return f(x) * std::sin(k * x); }, 0.7, pi);
        EXPECT_NEAR(m.c[k], c, 1e-10) << k;
        EXPECT_NEAR(m.s[k], s, 1e-10) << k;
    }
}

TEST(TrigMoments, HighHarmonicsOfSmoothFunction) {
    // ∫_{-π}^{π} x sin kx dx = 2π(-1)^{k+1}/k
    const std::size_t N = 5000;
    const auto m = trig_moments([](double x) { return x; }, -pi, pi, 1.0, N);
    for (std::size_t k : {1u, 17u, 999u, 4999u, 5000u})
        EXPECT_NEAR(m.s[k], 2 * pi * (k % 2 ? 1 : -1) / k, 1e-11) << k;
}

TEST(TrigMoments2D, ProductOfOneDimensionalMoments) {
    auto g = [](double x) { return x * (pi - x); };
    auto h = [](double y) { return y < 1 ? 1.0 : 0.5; };
    const auto m2 = trig_moments_2d([&](double x, double y) { return g(x) * h(y); }, 0, pi, 0, pi, 1, 1, 8, 8);
    const auto mx = trig_moments(g, 0, pi, 1, 8), my = trig_moments(h, 0, pi, 1, 8);
    for (std::size_t m = 0; m <= 8; ++m)
        for (std::size_t n = 0; n <= 8; ++n) {
            EXPECT_NEAR(m2.at(m2.ss, m, n), mx.s[m] * my.s[n], 1e-10);
            EXPECT_NEAR(m2.at(m2.cc, m, n), mx.c[m] * my.c[n], 1e-10);
            EXPECT_NEAR(m2.at(m2.sc, m, n), mx.s[m] * my.c[n], 1e-10);
            EXPECT_NEAR(m2.at(m2.cs, m, n), mx.c[m] * my.s[n], 1e-10);
        }
}
