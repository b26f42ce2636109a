#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "summa/errors.hpp"

namespace summa {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 60;
    double tail_cutoff_tol = 1e-10;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol >= 0) || max_depth < 1 || !(tail_cutoff_tol > 0))
            throw DomainError("invalid QuadConfig");
    }
};

struct ImproperOptions {
    // Tail decays like t^-lambda (lambda > 1). When set, each doubling panel is
    // extended by the geometric remainder it implies before the stopping test.
    double decay_lambda = 0;
    int max_doublings = 64;
};

namespace detail {

// Kronrod 21-point nodes/weights and the embedded 10-point Gauss weights (QUADPACK qk21).
inline constexpr std::array<double, 11> gk21_x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> gk21_wk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525706230, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> gk21_wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk21(F& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * gk21_wk[10], rg = 0, rabs = std::abs(rk);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = h * gk21_x[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        const double s = f1[j] + f2[j];
        rk += gk21_wk[j] * s;
        rabs += gk21_wk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) rg += gk21_wg[j / 2] * s;
    }
    const double mean = 0.5 * rk;
    double rasc = gk21_wk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        rasc += gk21_wk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    const double ah = std::abs(h);
    double err = std::abs((rk - rg) * h);
    rasc *= ah;
    rabs *= ah;
    if (rasc != 0 && err != 0) err = rasc * std::min(1.0, std::pow(200 * err / rasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (rabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * rabs, err);
    if (!std::isfinite(rk)) err = std::numeric_limits<double>::infinity();
    return {a, b, rk * h, err, depth};
}

struct Adaptive {
    double value = 0, error = 0;
    std::vector<Segment> segments;
};

inline constexpr std::size_t max_segments = 1 << 17;

// Global adaptive bisection: always split the segment with the largest error.
template <class F>
Adaptive adaptive(F& f, double a, double b, const QuadConfig& cfg) {
    std::priority_queue<Segment> open;
    std::vector<Segment> frozen;
    Segment first = gk21(f, a, b, 0);
    double value = first.value, error = first.error, frozen_error = 0;
    open.push(first);
    auto met = [&] {
        return std::isfinite(value) && error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    };
    while (!met()) {
        if (open.empty() || open.size() + frozen.size() >= max_segments)
            throw NonConvergence("adaptive quadrature: tolerance not met on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "], error estimate " + std::to_string(error));
        Segment s = open.top();
        open.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (s.depth >= cfg.max_depth || !(mid > s.a && mid < s.b)) {
            frozen.push_back(s);
            frozen_error += s.error;
            if (!(frozen_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))))
                throw NonConvergence("adaptive quadrature: depth limit reached on [" + std::to_string(a) +
                                     ", " + std::to_string(b) + "] with error estimate " +
                                     std::to_string(frozen_error));
            continue;
        }
        Segment l = gk21(f, s.a, mid, s.depth + 1), r = gk21(f, mid, s.b, s.depth + 1);
        value += l.value + r.value - s.value;
        error += l.error + r.error - s.error;
        open.push(l);
        open.push(r);
    }
    Adaptive out;
    out.segments = std::move(frozen);
    while (!open.empty()) {
        out.segments.push_back(open.top());
        open.pop();
    }
    std::sort(out.segments.begin(), out.segments.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    // Re-add in order so the reported value does not carry the running-update drift.
    out.value = 0;
    out.error = 0;
    for (const auto& s : out.segments) {
        out.value += s.value;
        out.error += s.error;
    }
    return out;
}

}  // namespace detail

// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussRule {
    std::vector<double> x, w;
};

inline GaussRule gauss_legendre(std::size_t n) {
    GaussRule g{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        g.x[i] = -z;
        g.x[n - 1 - i] = z;
        g.w[i] = g.w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
    }
    if (n % 2 == 1) g.x[n / 2] = 0;
    return g;
}

inline const GaussRule& gauss32() {
    static const GaussRule rule = gauss_legendre(32);
    return rule;
}

template <class F>
double integrate(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    cfg.validate();
    if (a == b) return 0;
    if (a > b) return -integrate(f, b, a, cfg);
    try {
        return detail::adaptive(f, a, b, cfg).value;
    } catch (const NonConvergence&) {
        // Retry under x = a + (b-a)(3u^2 - 2u^3), whose Jacobian vanishes at both
        // ends and absorbs inverse-square-root endpoint singularities.
        const double w = b - a;
        auto g = [&](double u) {
            const double s = u * u * (3 - 2 * u);
            return f(a + w * s) * w * 6 * u * (1 - u);
        };
        try {
            return detail::adaptive(g, 0.0, 1.0, cfg).value;
        } catch (const NonConvergence&) {
        }
        throw;
    }
}

// Breakpoints of the adaptive partition of [a, b] for f.
template <class F>
std::vector<double> adaptive_breakpoints(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    cfg.validate();
    std::vector<double> pts{a};
    if (a == b) return pts;
    for (const auto& s : detail::adaptive(f, a, b, cfg).segments) pts.push_back(s.b);
    pts.back() = b;
    return pts;
}

template <class F>
double integrate_improper(F&& f, double a, const QuadConfig& cfg = {}, const ImproperOptions& opt = {}) {
    cfg.validate();
    const double ratio =
        opt.decay_lambda > 1 ? 1.0 / (std::pow(2.0, opt.decay_lambda - 1) - 1) : 0.0;
    // Wide panels are integrated in chunks so an oscillating tail cannot
    // exhaust the segment budget of a single adaptive run.
    constexpr double chunk = 65536;
    auto panel = [&](double lo, double hi) {
        double s = 0;
        for (double x = lo; x < hi; x += chunk) s += integrate(f, x, std::min(hi, x + chunk), cfg);
        return s;
    };
    double width = 1;
    double sum = panel(a, a + width);
    double prev = sum, prev_gap = std::numeric_limits<double>::infinity(), prev_p = 0;
    for (int i = 0; i < opt.max_doublings; ++i) {
        const double p = panel(a + width, a + 2 * width);
        sum += p;
        width *= 2;
        // The geometric remainder only describes a tail that keeps its sign.
        const bool monotone = prev_p != 0 && (p > 0) == (prev_p > 0) && std::abs(p) <= std::abs(prev_p);
        const double est = monotone ? sum + ratio * p : sum;
        const double gap = std::abs(est - prev);
        if (gap < cfg.tail_cutoff_tol && prev_gap < cfg.tail_cutoff_tol) return est;
        prev = est;
        prev_gap = gap;
        prev_p = p;
    }
    throw NonConvergence("improper integral: cutoff doubling budget exhausted");
}

template <class F>
double integrate_rect2d(F&& f, double a, double b, double c, double d, const QuadConfig& cfg = {}) {
    cfg.validate();
    QuadConfig outer = cfg, inner = cfg;
    outer.abs_tol = 0.5 * cfg.abs_tol;
    inner.abs_tol = 0.5 * cfg.abs_tol / std::max(1.0, std::abs(b - a));
    return integrate([&](double x) { return integrate([&](double y) { return f(x, y); }, c, d, inner); },
                     a, b, outer);
}

// Moments of f against cos(k w (x - x0)) and sin(k w (x - x0)), k = 0..N.
struct TrigMoments {
    std::vector<double> c, s;
};

namespace detail {

// Quadrature nodes on [a, b]: the adaptive partition of f, each piece further
// split so that it spans at most `radians` of the fastest harmonic, 32 Gauss
// points per piece.
struct NodeSet {
    std::vector<double> x, w;
};

inline NodeSet oscillatory_nodes(const std::vector<double>& breaks, double top_freq,
                                 double radians = 48) {
    const auto& g = gauss32();
    NodeSet ns;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double u = breaks[i], v = breaks[i + 1];
        const auto pieces =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((v - u) * top_freq / radians)));
        const double step = (v - u) / pieces;
        for (std::size_t p = 0; p < pieces; ++p) {
            const double lo = u + p * step, hi = (p + 1 == pieces) ? v : lo + step;
            const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                ns.x.push_back(c + h * g.x[j]);
                ns.w.push_back(h * g.w[j]);
            }
        }
    }
    return ns;
}

// cos/sin(k*theta) for k = 0..N by rotation, resynchronised periodically.
inline void harmonics(double theta, std::size_t N, double* cs, double* sn) {
    const double ct = std::cos(theta), st = std::sin(theta);
    double c = 1, s = 0;
    for (std::size_t k = 0; k <= N; ++k) {
        if (k % 128 == 0 && k > 0) {
            c = std::cos(k * theta);
            s = std::sin(k * theta);
        }
        cs[k] = c;
        sn[k] = s;
        const double cn = c * ct - s * st;
        s = s * ct + c * st;
        c = cn;
    }
}

}  // namespace detail

template <class F>
TrigMoments trig_moments(F&& f, double a, double b, double omega, std::size_t N,
                         const QuadConfig& cfg = {}, double x0 = 0) {
    cfg.validate();
    TrigMoments m{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    if (a == b) return m;
    const auto nodes = detail::oscillatory_nodes(adaptive_breakpoints(f, a, b, cfg),
                                                 std::abs(omega) * std::max<std::size_t>(N, 1));
    std::vector<double> cs(N + 1), sn(N + 1);
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
        const double wf = nodes.w[i] * f(nodes.x[i]);
        if (wf == 0) continue;
        detail::harmonics(omega * (nodes.x[i] - x0), N, cs.data(), sn.data());
        for (std::size_t k = 0; k <= N; ++k) {
            m.c[k] += wf * cs[k];
            m.s[k] += wf * sn[k];
        }
    }
    return m;
}

// Row-major (M+1) x (N+1) grids of ∫∫ f · {cos,sin}(m wx (x-x0)) · {cos,sin}(n wy (y-y0)).
struct TrigMoments2D {
    std::size_t M = 0, N = 0;
    std::vector<double> cc, sc, cs, ss;  // first letter: x factor, second: y factor
    double at(const std::vector<double>& g, std::size_t m, std::size_t n) const { return g[m * (N + 1) + n]; }
};

template <class F>
TrigMoments2D trig_moments_2d(F&& f, double a, double b, double c, double d, double wx, double wy,
                              std::size_t M, std::size_t N, const QuadConfig& cfg = {}, double x0 = 0,
                              double y0 = 0) {
    cfg.validate();
    TrigMoments2D out;
    out.M = M;
    out.N = N;
    const std::size_t sz = (M + 1) * (N + 1);
    out.cc.assign(sz, 0.0);
    out.sc.assign(sz, 0.0);
    out.cs.assign(sz, 0.0);
    out.ss.assign(sz, 0.0);
    if (a == b || c == d) return out;
    // Partition each axis by the adaptive run on the marginal of |f|, so that
    // lines of discontinuity become panel edges.
    auto gx = [&](double x) { return integrate([&](double y) { return std::abs(f(x, y)); }, c, d, cfg); };
    auto gy = [&](double y) { return integrate([&](double x) { return std::abs(f(x, y)); }, a, b, cfg); };
    const auto nx = detail::oscillatory_nodes(adaptive_breakpoints(gx, a, b, cfg),
                                              std::abs(wx) * std::max<std::size_t>(M, 1));
    const auto ny = detail::oscillatory_nodes(adaptive_breakpoints(gy, c, d, cfg),
                                              std::abs(wy) * std::max<std::size_t>(N, 1));
    const std::size_t I = nx.x.size(), J = ny.x.size();
    std::vector<double> ycos(J * (N + 1)), ysin(J * (N + 1));
    for (std::size_t j = 0; j < J; ++j)
        detail::harmonics(wy * (ny.x[j] - y0), N, &ycos[j * (N + 1)], &ysin[j * (N + 1)]);
    std::vector<double> xc(M + 1), xs(M + 1), tc(N + 1), ts(N + 1);
    for (std::size_t i = 0; i < I; ++i) {
        std::fill(tc.begin(), tc.end(), 0.0);
        std::fill(ts.begin(), ts.end(), 0.0);
        bool any = false;
        for (std::size_t j = 0; j < J; ++j) {
            const double v = ny.w[j] * f(nx.x[i], ny.x[j]);
            if (v == 0) continue;
            any = true;
            const double* yc = &ycos[j * (N + 1)];
            const double* ys = &ysin[j * (N + 1)];
            for (std::size_t n = 0; n <= N; ++n) {
                tc[n] += v * yc[n];
                ts[n] += v * ys[n];
            }
        }
        if (!any) continue;
        detail::harmonics(wx * (nx.x[i] - x0), M, xc.data(), xs.data());
        for (std::size_t m = 0; m <= M; ++m) {
            const double wc = nx.w[i] * xc[m], ws = nx.w[i] * xs[m];
            double* cc = &out.cc[m * (N + 1)];
            double* sc = &out.sc[m * (N + 1)];
            double* cs = &out.cs[m * (N + 1)];
            double* ss = &out.ss[m * (N + 1)];
            for (std::size_t n = 0; n <= N; ++n) {
                cc[n] += wc * tc[n];
                cs[n] += wc * ts[n];
                sc[n] += ws * tc[n];
                ss[n] += ws * ts[n];
            }
        }
    }
    return out;
}

}  // namespace summa
