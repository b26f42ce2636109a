#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "summa/errors.hpp"
#include "summa/quadrature.hpp"

namespace summa {

enum class SeriesMode { full, cosine_only, sine_only };

inline const char* to_string(SeriesMode m) {
    switch (m) {
        case SeriesMode::cosine_only: return "cosine_only";
        case SeriesMode::sine_only: return "sine_only";
        case SeriesMode::full: break;
    }
    return "full";
}

inline SeriesMode series_mode_from_string(const std::string& s) {
    if (s == "full") return SeriesMode::full;
    if (s == "cosine_only") return SeriesMode::cosine_only;
    if (s == "sine_only") return SeriesMode::sine_only;
    throw DomainError("unknown series mode '" + s + "'");
}

// a0/2 + Σ_{k=1}^{N} (a_k cos λ_k x + b_k sin λ_k x), λ_k = kπ/l.
// a holds a_0..a_N and b holds b_1..b_N (so b[k-1] is b_k).
struct TrigSeries {
    double l = std::numbers::pi;
    std::vector<double> a{0.0};
    std::vector<double> b;
    SeriesMode mode = SeriesMode::full;

    std::size_t N() const { return b.size(); }
    double lambda(std::size_t k) const { return k * std::numbers::pi / l; }
    double cos_coef(std::size_t k) const { return a[k]; }
    double sin_coef(std::size_t k) const { return k == 0 ? 0.0 : b[k - 1]; }

    static TrigSeries zeros(double l, std::size_t N, SeriesMode mode = SeriesMode::full) {
        return {l, std::vector<double>(N + 1, 0.0), std::vector<double>(N, 0.0), mode};
    }

    void validate() const {
        if (!(l > 0) || !std::isfinite(l)) throw DomainError("TrigSeries: half period must be positive");
        if (a.size() != b.size() + 1) throw DomainError("TrigSeries: need len(a) = len(b) + 1");
        for (double v : a)
            if (!std::isfinite(v)) throw DomainError("TrigSeries: non-finite coefficient");
        for (double v : b)
            if (!std::isfinite(v)) throw DomainError("TrigSeries: non-finite coefficient");
    }
};

struct ComplexTrigSeries {
    double l = std::numbers::pi;
    std::vector<std::complex<double>> c;  // c_{-N}..c_N

    std::size_t N() const { return c.empty() ? 0 : (c.size() - 1) / 2; }
    std::complex<double> at(long n) const { return c[static_cast<std::size_t>(n + static_cast<long>(N()))]; }
    std::complex<double>& at(long n) { return c[static_cast<std::size_t>(n + static_cast<long>(N()))]; }
};

template <class F>
TrigSeries trig_coefficients(F&& f, double l, std::size_t N, SeriesMode mode = SeriesMode::full,
                             const QuadConfig& cfg = {}) {
    if (!(l > 0)) throw DomainError("trig_coefficients: l must be positive");
    TrigSeries s = TrigSeries::zeros(l, N, mode);
    const double w = std::numbers::pi / l;
    if (mode == SeriesMode::full) {
        const auto m = trig_moments(f, -l, l, w, N, cfg);
        for (std::size_t k = 0; k <= N; ++k) s.a[k] = m.c[k] / l;
        for (std::size_t k = 1; k <= N; ++k) s.b[k - 1] = m.s[k] / l;
    } else {
        const auto m = trig_moments(f, 0.0, l, w, N, cfg);
        if (mode == SeriesMode::cosine_only)
            for (std::size_t k = 0; k <= N; ++k) s.a[k] = 2 * m.c[k] / l;
        else
            for (std::size_t k = 1; k <= N; ++k) s.b[k - 1] = 2 * m.s[k] / l;
    }
    return s;
}

inline ComplexTrigSeries to_complex(const TrigSeries& s) {
    const std::size_t N = s.N();
    ComplexTrigSeries z{s.l, std::vector<std::complex<double>>(2 * N + 1)};
    z.at(0) = s.a[0] / 2;
    for (std::size_t k = 1; k <= N; ++k) {
        const long n = static_cast<long>(k);
        z.at(n) = std::complex<double>(s.a[k], -s.b[k - 1]) / 2.0;
        z.at(-n) = std::complex<double>(s.a[k], s.b[k - 1]) / 2.0;
    }
    return z;
}

// Inverse of to_complex; imaginary parts (nonzero only for non-real series) are dropped.
inline TrigSeries from_complex(const ComplexTrigSeries& z) {
    const std::size_t N = z.N();
    TrigSeries s = TrigSeries::zeros(z.l, N);
    s.a[0] = 2 * z.at(0).real();
    for (std::size_t k = 1; k <= N; ++k) {
        const long n = static_cast<long>(k);
        s.a[k] = (z.at(n) + z.at(-n)).real();
        s.b[k - 1] = (std::complex<double>(0, 1) * (z.at(n) - z.at(-n))).real();
    }
    return s;
}

// (1/π)(1/2 + Σ_{k=1}^{n} cos kt)
inline double dirichlet_kernel(int n, double t) {
    if (n < 0) throw DomainError("dirichlet_kernel: negative order");
    double s = 0.5;
    for (int k = 1; k <= n; ++k) s += std::cos(k * t);
    return s / std::numbers::pi;
}

namespace detail {

// a0/2 + Σ_{k<=n} w_k (a_k cos λ_k x + b_k sin λ_k x), weights w_k from `factor(k)`.
template <class W>
double weighted_sum(const TrigSeries& s, std::size_t n, double x, W&& factor) {
    std::vector<double> cs(n + 1), sn(n + 1);
    harmonics(std::numbers::pi * x / s.l, n, cs.data(), sn.data());
    double sum = 0;
    for (std::size_t k = n; k >= 1; --k) {
        const double w = factor(k);
        if (w != 0) sum += w * (s.a[k] * cs[k] + s.b[k - 1] * sn[k]);
    }
    return sum + 0.5 * s.a[0];
}

}  // namespace detail

inline double partial_sum(const TrigSeries& s, std::size_t n, double x) {
    if (n > s.N()) throw IndexError("partial_sum: n = " + std::to_string(n) + " exceeds N = " + std::to_string(s.N()));
    return detail::weighted_sum(s, n, x, [](std::size_t) { return 1.0; });
}

inline double partial_sum(const TrigSeries& s, double x) { return partial_sum(s, s.N(), x); }

inline TrigSeries differentiate_series(const TrigSeries& s, int m) {
    if (m < 0) throw DomainError("differentiate_series: negative order");
    TrigSeries d = s;
    for (int i = 0; i < m; ++i) {
        d.a[0] = 0;
        for (std::size_t k = 1; k <= d.N(); ++k) {
            const double lam = d.lambda(k), ak = d.a[k], bk = d.b[k - 1];
            d.a[k] = lam * bk;
            d.b[k - 1] = -lam * ak;
        }
        if (d.mode == SeriesMode::cosine_only)
            d.mode = SeriesMode::sine_only;
        else if (d.mode == SeriesMode::sine_only)
            d.mode = SeriesMode::cosine_only;
    }
    return d;
}

// Term-wise series of ∫_0^x [f(t) - a0/2] dt; its constant term is Σ b_k/λ_k.
inline TrigSeries antiderivative(const TrigSeries& s) {
    TrigSeries r = TrigSeries::zeros(s.l, s.N());
    double constant = 0;
    for (std::size_t k = 1; k <= s.N(); ++k) {
        const double lam = s.lambda(k);
        r.a[k] = -s.b[k - 1] / lam;
        r.b[k - 1] = s.a[k] / lam;
        constant += s.b[k - 1] / lam;
    }
    r.a[0] = 2 * constant;
    return r;
}

inline double integrate_series(const TrigSeries& s, double x) { return partial_sum(antiderivative(s), x); }

// (1/l)∫f^2 over the full period minus a0^2/2 + Σ(a_k^2 + b_k^2). Half-range
// series are measured against the even or odd extension of f from [0, l].
template <class F>
double parseval_gap(F&& f, const TrigSeries& s, const QuadConfig& cfg = {}) {
    auto sq = [&](double x) {
        const double v = f(x);
        return v * v;
    };
    const double energy = s.mode == SeriesMode::full ? integrate(sq, -s.l, s.l, cfg) / s.l
                                                     : 2 * integrate(sq, 0.0, s.l, cfg) / s.l;
    double coef = 0.5 * s.a[0] * s.a[0];
    for (std::size_t k = 1; k <= s.N(); ++k) coef += s.a[k] * s.a[k] + s.b[k - 1] * s.b[k - 1];
    return energy - coef;
}

// Grids are row-major (M+1) x (N+1):
//   a: cos(mπx/p) cos(nπy/q)   b: sin·cos   c: cos·sin   d: sin·sin
struct DoubleTrigSeries {
    double p = std::numbers::pi, q = std::numbers::pi;
    std::size_t M = 0, N = 0;
    std::vector<double> a, b, c, d;

    static DoubleTrigSeries zeros(double p, double q, std::size_t M, std::size_t N) {
        const std::size_t sz = (M + 1) * (N + 1);
        return {p, q, M, N, std::vector<double>(sz, 0.0), std::vector<double>(sz, 0.0),
                std::vector<double>(sz, 0.0), std::vector<double>(sz, 0.0)};
    }
    std::size_t idx(std::size_t m, std::size_t n) const { return m * (N + 1) + n; }
    static double weight(std::size_t m, std::size_t n) {
        if (m == 0 && n == 0) return 0.25;
        if (m == 0 || n == 0) return 0.5;
        return 1.0;
    }
    void validate() const {
        if (!(p > 0) || !(q > 0)) throw DomainError("DoubleTrigSeries: half periods must be positive");
        const std::size_t sz = (M + 1) * (N + 1);
        if (a.size() != sz || b.size() != sz || c.size() != sz || d.size() != sz)
            throw DomainError("DoubleTrigSeries: grid shape mismatch");
    }
};

template <class F>
DoubleTrigSeries double_trig_coefficients(F&& f, double p, double q, std::size_t M, std::size_t N,
                                          const QuadConfig& cfg = {}) {
    if (!(p > 0) || !(q > 0)) throw DomainError("double_trig_coefficients: half periods must be positive");
    const auto m = trig_moments_2d(f, -p, p, -q, q, std::numbers::pi / p, std::numbers::pi / q, M, N, cfg);
    DoubleTrigSeries s = DoubleTrigSeries::zeros(p, q, M, N);
    const double scale = 1 / (p * q);
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        s.a[i] = m.cc[i] * scale;
        s.b[i] = m.sc[i] * scale;
        s.c[i] = m.cs[i] * scale;
        s.d[i] = m.ss[i] * scale;
    }
    return s;
}

namespace detail {

template <class WX, class WY>
double double_weighted_sum(const DoubleTrigSeries& s, std::size_t M, std::size_t N, double x, double y, WX&& fx,
                           WY&& fy) {
    std::vector<double> cx(M + 1), sx(M + 1), cy(N + 1), sy(N + 1), wy(N + 1);
    harmonics(std::numbers::pi * x / s.p, M, cx.data(), sx.data());
    harmonics(std::numbers::pi * y / s.q, N, cy.data(), sy.data());
    for (std::size_t n = 0; n <= N; ++n) wy[n] = fy(n);
    double sum = 0;
    for (std::size_t m = 0; m <= M; ++m) {
        const double wx = fx(m);
        if (wx == 0) continue;
        double row = 0;
        for (std::size_t n = 0; n <= N; ++n) {
            if (wy[n] == 0) continue;
            const std::size_t i = s.idx(m, n);
            row += DoubleTrigSeries::weight(m, n) * wy[n] *
                   (s.a[i] * cx[m] * cy[n] + s.b[i] * sx[m] * cy[n] + s.c[i] * cx[m] * sy[n] +
                    s.d[i] * sx[m] * sy[n]);
        }
        sum += wx * row;
    }
    return sum;
}

}  // namespace detail

inline double double_partial_sum(const DoubleTrigSeries& s, std::size_t M, std::size_t N, double x, double y) {
    if (M > s.M || N > s.N) throw IndexError("double_partial_sum: truncation exceeds the coefficient grid");
    auto one = [](std::size_t) { return 1.0; };
    return detail::double_weighted_sum(s, M, N, x, y, one, one);
}

}  // namespace summa
