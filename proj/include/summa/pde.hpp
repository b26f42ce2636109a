#pragma once

// Fixed-end string, fixed-edge rectangular membrane and Dirichlet Helmholtz
// problems solved by (optionally damped) eigenfunction series.
//
//   string:    u_tt = a^2 u_xx + f(x, t),        u(0) = u(l) = 0
//   membrane:  u_tt = a^2 Δu + f(x, y, t),       u = 0 on the rectangle edge
//   helmholtz: Δu + θ^2 u = -F(x, y),            u = 0 on the rectangle edge
//
// Damping multiplies mode k by φ(λ_k r) (product φ(λ_1k r) φ(λ_2m r) in 2-D);
// r = 0 gives the classical series.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "summa/errors.hpp"
#include "summa/kernels.hpp"
#include "summa/quadrature.hpp"

namespace summa {

// f(x, t) = profile(x) · amplitude · sin(omega t); the Duhamel integral is then closed-form.
struct HarmonicLoad {
    std::function<double(double)> profile;
    double amplitude = 1, omega = 0;
};

// f(x, t) = profile(x) · time(t)
struct SeparableLoad {
    std::function<double(double)> profile, time;
};

struct StringProblem {
    double l = std::numbers::pi, a = 1;
    std::function<double(double)> chi, psi;
    std::function<double(double, double)> load;
    std::optional<SeparableLoad> separable;
    std::optional<HarmonicLoad> harmonic;

    void validate() const {
        if (!(l > 0) || !std::isfinite(l)) throw DomainError("string: length must be positive");
        if (!(a > 0) || !std::isfinite(a)) throw DomainError("string: wave speed must be positive");
    }
    double lambda(std::size_t k) const { return k * std::numbers::pi / l; }
};

struct MembraneProblem {
    double l1 = std::numbers::pi, l2 = std::numbers::pi, a = 1;
    std::function<double(double, double)> chi, psi;
    std::function<double(double, double, double)> load;

    void validate() const {
        if (!(l1 > 0) || !(l2 > 0) || !std::isfinite(l1) || !std::isfinite(l2))
            throw DomainError("membrane: sides must be positive");
        if (!(a > 0) || !std::isfinite(a)) throw DomainError("membrane: wave speed must be positive");
    }
};

struct HelmholtzProblem {
    double l1 = std::numbers::pi, l2 = std::numbers::pi, theta = 0;
    std::function<double(double, double)> source;

    void validate() const {
        if (!(l1 > 0) || !(l2 > 0) || !std::isfinite(l1) || !std::isfinite(l2))
            throw DomainError("helmholtz: sides must be positive");
        if (!(theta >= 0) || !std::isfinite(theta)) throw DomainError("helmholtz: theta must be non-negative");
    }
};

enum class ProblemKind { string, membrane, helmholtz };

// Mode (k, m), 1-based, sits at index (k-1)·ny + (m-1); for the string ny = 1.
struct ModalSolution {
    ProblemKind kind = ProblemKind::string;
    double l1 = std::numbers::pi, l2 = std::numbers::pi, a = 1, theta = 0;
    std::size_t nx = 0, ny = 1;
    double r = 0;
    std::vector<double> chi, psi;  // helmholtz: chi holds u_km before damping
    std::vector<double> damping;
    std::vector<std::string> warnings;

    std::size_t index(std::size_t k, std::size_t m = 1) const { return (k - 1) * ny + (m - 1); }

    // sin(kπx/l), reflected about l/2 so both ends give exactly zero.
    static double sine(std::size_t k, double x, double l) {
        const double u = x / l;
        if (u <= 0.5) return std::sin(k * std::numbers::pi * u);
        const double s = std::sin(k * std::numbers::pi * (1 - u));
        return k % 2 ? s : -s;
    }
    double lambda1(std::size_t k) const { return k * std::numbers::pi / l1; }
    double lambda2(std::size_t m) const { return m * std::numbers::pi / l2; }
    double lambda(std::size_t k, std::size_t m = 1) const {
        if (kind == ProblemKind::string) return lambda1(k);
        return std::hypot(lambda1(k), lambda2(m));
    }

    // Undamped modal amplitude and its time derivative.
    double amplitude(std::size_t k, std::size_t m, double t) const {
        const double w = a * lambda(k, m);
        const std::size_t i = index(k, m);
        return chi[i] * std::cos(w * t) + psi[i] / w * std::sin(w * t);
    }
    double velocity(std::size_t k, std::size_t m, double t) const {
        const double w = a * lambda(k, m);
        const std::size_t i = index(k, m);
        return -chi[i] * w * std::sin(w * t) + psi[i] * std::cos(w * t);
    }

    double string_value(double x, double t) const {
        if (kind != ProblemKind::string) throw DomainError("string_value on a non-string solution");
        double u = 0;
        for (std::size_t k = nx; k >= 1; --k) u += damping[k - 1] * amplitude(k, 1, t) * sine(k, x, l1);
        return u;
    }
    double membrane_value(double x, double y, double t) const {
        if (kind != ProblemKind::membrane) throw DomainError("membrane_value on a non-membrane solution");
        std::vector<double> sy(ny + 1);
        for (std::size_t m = 1; m <= ny; ++m) sy[m] = sine(m, y, l2);
        double u = 0;
        for (std::size_t k = 1; k <= nx; ++k) {
            double row = 0;
            for (std::size_t m = 1; m <= ny; ++m) row += damping[index(k, m)] * amplitude(k, m, t) * sy[m];
            u += row * sine(k, x, l1);
        }
        return u;
    }
    double helmholtz_value(double x, double y) const {
        if (kind != ProblemKind::helmholtz) throw DomainError("helmholtz_value on a non-helmholtz solution");
        std::vector<double> sy(ny + 1);
        for (std::size_t m = 1; m <= ny; ++m) sy[m] = sine(m, y, l2);
        double u = 0;
        for (std::size_t k = 1; k <= nx; ++k) {
            double row = 0;
            for (std::size_t m = 1; m <= ny; ++m) row += damping[index(k, m)] * chi[index(k, m)] * sy[m];
            u += row * sine(k, x, l1);
        }
        return u;
    }
};

namespace detail {

inline void check_r(double r) {
    if (!(r >= 0) || !std::isfinite(r)) throw DomainError("damping parameter r must be non-negative");
}

inline double damping_factor(const KernelSpec& k, double z, double r, const QuadConfig& cfg) {
    return r > 0 ? phi(k, z, cfg) : 1.0;
}

inline std::optional<std::string> smoothness_warning(const KernelSpec& k, double r, int needed) {
    if (r > 0 && k.smoothness_p < needed)
        return "kernel '" + k.name + "' has smoothness p = " + std::to_string(k.smoothness_p) + ", damping wants p >= " +
               std::to_string(needed);
    return std::nullopt;
}

// (2/l) ∫_0^l g(x) sin(kπx/l) dx, k = 1..N
// An empty std::function stands for identically zero data.
template <class G>
bool is_empty(const G& g) {
    if constexpr (requires { g == nullptr; }) return g == nullptr;
    else return false;
}

template <class G>
std::vector<double> sine_coefficients(G&& g, double l, std::size_t N, const QuadConfig& cfg) {
    std::vector<double> c(N, 0.0);
    if (is_empty(g)) return c;
    const auto m = trig_moments(g, 0.0, l, std::numbers::pi / l, N, cfg);
    for (std::size_t k = 1; k <= N; ++k) c[k - 1] = 2 / l * m.s[k];
    return c;
}

template <class G>
std::vector<double> double_sine_coefficients(G&& g, double l1, double l2, std::size_t M, std::size_t N,
                                             const QuadConfig& cfg) {
    std::vector<double> c(M * N, 0.0);
    if (is_empty(g)) return c;
    const auto mom = trig_moments_2d(g, 0.0, l1, 0.0, l2, std::numbers::pi / l1, std::numbers::pi / l2, M, N, cfg);
    const double scale = 4 / (l1 * l2);
    for (std::size_t k = 1; k <= M; ++k)
        for (std::size_t m = 1; m <= N; ++m) c[(k - 1) * N + (m - 1)] = scale * mom.at(mom.ss, k, m);
    return c;
}

inline void check_resonance(double gap, const std::string& where) {
    if (std::abs(gap) < 1e-9) throw ResonanceError(where + ": forcing frequency coincides with an eigenfrequency");
}

}  // namespace detail

inline ModalSolution string_free(const StringProblem& p, std::size_t N, double r, const KernelSpec& k,
                                 const QuadConfig& cfg = {}) {
    p.validate();
    detail::check_r(r);
    if (N < 1) throw DomainError("string_free: N must be at least 1");
    ModalSolution s;
    s.kind = ProblemKind::string;
    s.l1 = p.l;
    s.a = p.a;
    s.nx = N;
    s.r = r;
    s.chi = detail::sine_coefficients(p.chi, p.l, N, cfg);
    s.psi = detail::sine_coefficients(p.psi, p.l, N, cfg);
    s.damping.resize(N);
    for (std::size_t i = 1; i <= N; ++i) s.damping[i - 1] = detail::damping_factor(k, p.lambda(i) * r, r, cfg);
    if (auto w = detail::smoothness_warning(k, r, 4)) s.warnings.push_back(*w);
    return s;
}

// Evaluator for the forced response with zero initial data:
// u(x, t) = (1/a) Σ φ(λ_k r)/λ_k ∫_0^t sin aλ_k(t - τ) f_k(τ) dτ sin λ_k x.
inline std::function<double(double, double)> string_forced(const StringProblem& p, std::size_t N, double r,
                                                           const KernelSpec& k, const QuadConfig& t_quad = {}) {
    p.validate();
    detail::check_r(r);
    if (N < 1) throw DomainError("string_forced: N must be at least 1");
    if (!p.load && !p.separable && !p.harmonic) throw DomainError("string_forced: no load given");
    std::vector<double> lam(N), damp(N);
    for (std::size_t i = 1; i <= N; ++i) {
        lam[i - 1] = p.lambda(i);
        damp[i - 1] = detail::damping_factor(k, lam[i - 1] * r, r, t_quad);
    }
    const double a = p.a;
    const double l = p.l;
    auto spatial = [l](const std::vector<double>& amp, double x) {
        double u = 0;
        for (std::size_t i = amp.size(); i >= 1; --i) u += amp[i - 1] * ModalSolution::sine(i, x, l);
        return u;
    };

    if (p.harmonic) {
        const auto& h = *p.harmonic;
        const auto fk = detail::sine_coefficients(h.profile, p.l, N, t_quad);
        for (double L : lam) detail::check_resonance(a * a * L * L - h.omega * h.omega, "string_forced");
        return [=](double x, double t) {
            std::vector<double> amp(N);
            for (std::size_t i = 0; i < N; ++i) {
                const double w = a * lam[i];
                const double duhamel = h.amplitude * (w * std::sin(h.omega * t) - h.omega * std::sin(w * t)) /
                                       (w * w - h.omega * h.omega);
                amp[i] = damp[i] / (a * lam[i]) * fk[i] * duhamel;
            }
            return spatial(amp, x);
        };
    }
    if (p.separable) {
        const auto sep = *p.separable;
        const auto fk = detail::sine_coefficients(sep.profile, p.l, N, t_quad);
        return [=](double x, double t) {
            std::vector<double> amp(N);
            for (std::size_t i = 0; i < N; ++i) {
                if (fk[i] == 0 || damp[i] == 0) continue;
                const double w = a * lam[i];
                const double I = integrate([&](double tau) { return std::sin(w * (t - tau)) * sep.time(tau); }, 0.0, t, t_quad);
                amp[i] = damp[i] / w * fk[i] * I;
            }
            return spatial(amp, x);
        };
    }
    const auto load = p.load;
    return [=](double x, double t) {
        // Every mode's Duhamel quadrature asks for f_k at nodes of the same
        // bisection tree, so all N coefficients are kept per τ.
        std::map<double, std::vector<double>> cache;
        auto coeffs = [&](double tau) -> const std::vector<double>& {
            auto it = cache.find(tau);
            if (it == cache.end())
                it = cache.emplace(tau, detail::sine_coefficients([&](double xi) { return load(xi, tau); }, l, N, t_quad))
                         .first;
            return it->second;
        };
        std::vector<double> amp(N);
        for (std::size_t i = 0; i < N; ++i) {
            if (damp[i] == 0) continue;
            const double w = a * lam[i];
            const double I = integrate([&](double tau) { return std::sin(w * (t - tau)) * coeffs(tau)[i]; }, 0.0, t, t_quad);
            amp[i] = damp[i] / w * I;
        }
        return spatial(amp, x);
    };
}

// G_r(x, ξ, Δt) = (2/(la)) Σ φ(λ_k r)/λ_k sin λ_k ξ sin λ_k x sin aλ_k Δt
inline double string_green(double l, double a, double x, double xi, double dt, std::size_t N, double r,
                           const KernelSpec& k) {
    if (!(l > 0) || !(a > 0)) throw DomainError("string_green: l and a must be positive");
    if (!(x > 0 && x < l) || !(xi > 0 && xi < l)) throw DomainError("string_green: x and xi must lie in (0, l)");
    if (!(dt >= 0)) throw DomainError("string_green: dt must be non-negative");
    if (!(r > 0)) throw DomainError("string_green: pointwise evaluation needs r > 0");
    double g = 0;
    for (std::size_t i = N; i >= 1; --i) {
        const double L = i * std::numbers::pi / l;
        g += phi(k, L * r) / L * std::sin(L * xi) * std::sin(L * x) * std::sin(a * L * dt);
    }
    return 2 / (l * a) * g;
}

inline ModalSolution membrane_free(const MembraneProblem& p, std::size_t M, std::size_t N, double r, const KernelSpec& k,
                                   const QuadConfig& cfg = {}) {
    p.validate();
    detail::check_r(r);
    if (M < 1 || N < 1) throw DomainError("membrane_free: M and N must be at least 1");
    ModalSolution s;
    s.kind = ProblemKind::membrane;
    s.l1 = p.l1;
    s.l2 = p.l2;
    s.a = p.a;
    s.nx = M;
    s.ny = N;
    s.r = r;
    s.chi = detail::double_sine_coefficients(p.chi, p.l1, p.l2, M, N, cfg);
    s.psi = detail::double_sine_coefficients(p.psi, p.l1, p.l2, M, N, cfg);
    s.damping.resize(M * N);
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= N; ++j)
            s.damping[s.index(i, j)] = detail::damping_factor(k, s.lambda1(i) * r, r, cfg) *
                                       detail::damping_factor(k, s.lambda2(j) * r, r, cfg);
    if (auto w = detail::smoothness_warning(k, r, 4)) s.warnings.push_back(*w);
    return s;
}

inline std::function<double(double, double, double)> membrane_forced(const MembraneProblem& p, std::size_t M,
                                                                     std::size_t N, double r, const KernelSpec& k,
                                                                     const QuadConfig& cfg = {}) {
    p.validate();
    detail::check_r(r);
    if (M < 1 || N < 1) throw DomainError("membrane_forced: M and N must be at least 1");
    if (!p.load) throw DomainError("membrane_forced: no load given");
    ModalSolution shape;
    shape.kind = ProblemKind::membrane;
    shape.l1 = p.l1;
    shape.l2 = p.l2;
    shape.a = p.a;
    shape.nx = M;
    shape.ny = N;
    shape.r = r;
    shape.damping.resize(M * N);
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= N; ++j)
            shape.damping[shape.index(i, j)] = detail::damping_factor(k, shape.lambda1(i) * r, r, cfg) *
                                               detail::damping_factor(k, shape.lambda2(j) * r, r, cfg);
    const auto load = p.load;
    return [=](double x, double y, double t) {
        std::map<double, std::vector<double>> cache;
        auto coeffs = [&](double tau) -> const std::vector<double>& {
            auto it = cache.find(tau);
            if (it == cache.end())
                it = cache
                         .emplace(tau, detail::double_sine_coefficients(
                                           [&](double u, double v) { return load(u, v, tau); }, p.l1, p.l2, M, N, cfg))
                         .first;
            return it->second;
        };
        double u = 0;
        for (std::size_t i = 1; i <= M; ++i) {
            double row = 0;
            for (std::size_t j = 1; j <= N; ++j) {
                const std::size_t idx = shape.index(i, j);
                if (shape.damping[idx] == 0) continue;
                const double w = shape.a * shape.lambda(i, j);
                const double I =
                    integrate([&](double tau) { return std::sin(w * (t - tau)) * coeffs(tau)[idx]; }, 0.0, t, cfg);
                row += shape.damping[idx] * I / w * ModalSolution::sine(j, y, shape.l2);
            }
            u += row * ModalSolution::sine(i, x, shape.l1);
        }
        return u;
    };
}

inline ModalSolution helmholtz_modes(const HelmholtzProblem& p, std::size_t M, std::size_t N, double r,
                                     const KernelSpec& k, const QuadConfig& cfg = {}) {
    p.validate();
    detail::check_r(r);
    if (M < 1 || N < 1) throw DomainError("helmholtz_solve: M and N must be at least 1");
    ModalSolution s;
    s.kind = ProblemKind::helmholtz;
    s.l1 = p.l1;
    s.l2 = p.l2;
    s.theta = p.theta;
    s.nx = M;
    s.ny = N;
    s.r = r;
    const double th2 = p.theta * p.theta;
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= N; ++j) {
            const double L = s.lambda(i, j);
            detail::check_resonance(L * L - th2, "helmholtz");
        }
    s.chi = detail::double_sine_coefficients(p.source, p.l1, p.l2, M, N, cfg);
    s.psi.assign(M * N, 0.0);
    s.damping.resize(M * N);
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= N; ++j) {
            const std::size_t idx = s.index(i, j);
            const double L = s.lambda(i, j);
            s.chi[idx] /= L * L - th2;
            s.damping[idx] = detail::damping_factor(k, s.lambda1(i) * r, r, cfg) *
                             detail::damping_factor(k, s.lambda2(j) * r, r, cfg);
        }
    return s;
}

inline std::function<double(double, double)> helmholtz_solve(const HelmholtzProblem& p, std::size_t M, std::size_t N,
                                                             double r, const KernelSpec& k, const QuadConfig& cfg = {}) {
    auto s = helmholtz_modes(p, M, N, r, k, cfg);
    return [s = std::move(s)](double x, double y) { return s.helmholtz_value(x, y); };
}

inline double helmholtz_green(const HelmholtzProblem& p, double x, double y, double x0, double y0, std::size_t M,
                              std::size_t N, double r, const KernelSpec& k) {
    p.validate();
    if (!(r > 0)) throw DomainError("helmholtz_green: pointwise evaluation needs r > 0");
    const double pi = std::numbers::pi, th2 = p.theta * p.theta;
    std::vector<double> fx(M + 1), fy(N + 1);
    for (std::size_t i = 1; i <= M; ++i) {
        const double L = i * pi / p.l1;
        fx[i] = phi(k, L * r) * std::sin(L * x) * std::sin(L * x0);
    }
    for (std::size_t j = 1; j <= N; ++j) {
        const double L = j * pi / p.l2;
        fy[j] = phi(k, L * r) * std::sin(L * y) * std::sin(L * y0);
    }
    double g = 0;
    for (std::size_t i = 1; i <= M; ++i)
        for (std::size_t j = 1; j <= N; ++j) {
            const double a = i * pi / p.l1, b = j * pi / p.l2;
            const double gap = a * a + b * b - th2;
            detail::check_resonance(gap, "helmholtz_green");
            g += fx[i] * fy[j] / gap;
        }
    return 4 / (p.l1 * p.l2) * g;
}

}  // namespace summa
