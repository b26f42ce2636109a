#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "summa/errors.hpp"
#include "summa/fourier.hpp"
#include "summa/kernels.hpp"
#include "summa/parallel.hpp"

namespace summa {

enum class ParamKind { continuous_r, discrete_n };

// Multiplier method: the k-th term is scaled by factor(k, param). Continuous
// methods take r → +0, discrete ones n → ∞.
struct SummationMethod {
    std::string name;
    std::function<double(std::size_t, double)> factor;
    ParamKind param_kind = ParamKind::continuous_r;
    std::optional<KernelSpec> source;  // factor(k, r) = φ(source_scale · k r)
    double source_scale = 1;
    int smoothness_p = infinite_smoothness;
    std::string formula;
    // Discrete methods: the factor vanishes for k > last_mode(n).
    std::function<std::size_t(std::size_t)> last_mode;

    void check_param(double param) const {
        if (param_kind == ParamKind::continuous_r) {
            if (!(param > 0) || !std::isfinite(param)) throw DomainError(name + ": r must be positive");
        } else if (!(param >= 1) || param != std::floor(param) || param > 1e9) {
            throw DomainError(name + ": n must be a positive integer");
        }
    }
};

namespace detail {

inline SummationMethod kernel_method(std::string name, const std::string& kernel, double scale, std::string formula) {
    SummationMethod m;
    m.name = std::move(name);
    m.source = builtin(kernel);
    m.source_scale = scale;
    m.smoothness_p = m.source->smoothness_p;
    m.formula = std::move(formula);
    m.factor = [phi = m.source->phi_closed, scale](std::size_t k, double r) { return phi(scale * k * r); };
    return m;
}

inline SummationMethod discrete_method(std::string name, std::function<double(std::size_t, double)> f,
                                       std::function<std::size_t(std::size_t)> last, int p, std::string formula) {
    SummationMethod m;
    m.name = std::move(name);
    m.factor = std::move(f);
    m.param_kind = ParamKind::discrete_n;
    m.last_mode = std::move(last);
    m.smoothness_p = p;
    m.formula = std::move(formula);
    return m;
}

inline int extra_int(const std::string& name, std::optional<double> extra, int dflt) {
    if (!extra) return dflt;
    const double v = *extra;
    if (!(v >= 1) || v != std::floor(v) || v > 64)
        throw UnknownMethod(name + ": parameter must be an integer in [1, 64]");
    return static_cast<int>(v);
}

}  // namespace detail

inline std::vector<std::string> method_names() {
    return {"fejer", "fejer_r", "poisson", "riemann", "riesz", "gauss", "quadratic", "poly", "moment",
            "raised_cosine", "raised_cosine_n", "sech", "kr_sinh", "laplace", "exp_cos"};
}

// extra: Riesz order p, poly order k, raised-cosine order m (default 1 each).
inline SummationMethod method(const std::string& name, std::optional<double> extra = std::nullopt) {
    using detail::discrete_method;
    using detail::kernel_method;
    if (name == "fejer")
        return discrete_method(
            name, [](std::size_t k, double n) { return k < n ? 1 - k / n : 0.0; },
            [](std::size_t n) { return n - 1; }, infinite_smoothness, "1 - k/n, k < n");
    if (name == "riesz") {
        const int p = detail::extra_int(name, extra, 1);
        auto m = discrete_method(
            name,
            [p](std::size_t k, double n) {
                const double u = k / n;
                return u < 1 ? std::pow(1 - u * u, p) : 0.0;
            },
            [](std::size_t n) { return n - 1; }, p, "[1 - (k/n)^2]^p, k <= n, p=" + std::to_string(p));
        return m;
    }
    if (name == "raised_cosine_n")
        return discrete_method(
            name,
            [](std::size_t k, double n) {
                if (k > n) return 0.0;
                const double kk = static_cast<double>(k);
                return std::exp(2 * std::lgamma(n + 1) - std::lgamma(n + kk + 1) - std::lgamma(n - kk + 1));
            },
            [](std::size_t n) { return n; }, infinite_smoothness, "(n!)^2/((n+k)! (n-k)!), k <= n");
    if (name == "fejer_r") return kernel_method(name, "fejer", 1, "max(0, 1 - kr)");
    if (name == "poisson") return kernel_method(name, "poisson", 1, "exp(-kr)");
    if (name == "riemann") return kernel_method(name, "triangle", 2, "(sin kr/(kr))^2");
    if (name == "gauss") return kernel_method(name, "gauss", 2, "exp(-(kr)^2)");
    if (name == "quadratic") return kernel_method(name, "quadratic", 1, "6/(kr)^2 (1 - sin kr/(kr))");
    if (name == "poly") {
        const int k = detail::extra_int(name, extra, 1);
        auto m = kernel_method(name, "poly_" + std::to_string(k), 1, "");
        m.formula = k == 1 ? "3/(kr)^2 (sin kr/(kr) - cos kr)" : "Gamma(k+3/2) (2/kr)^(k+1/2) J_(k+1/2)(kr), k=" + std::to_string(k);
        return m;
    }
    if (name == "moment")
        return kernel_method(name, "moment", 1, "(1 + (kr/pi)^2)/(1 + kr/pi)^2 (cos(kr/2)/(1 - kr/pi))^2");
    if (name == "raised_cosine") {
        const int m = detail::extra_int(name, extra, 1);
        return kernel_method(name, "raised_cosine_" + std::to_string(m), 1,
                             "sin kr/(kr) prod_(i=1..m) [1 - (kr/(i pi))^2]^(-1), m=" + std::to_string(m));
    }
    if (name == "sech") return kernel_method(name, "sech", 1, "1/cosh kr");
    if (name == "kr_sinh") return kernel_method(name, "sech2", 1, "kr/sinh kr");
    if (name == "laplace") return kernel_method(name, "laplace", 1, "1/(1 + (kr)^2)");
    if (name == "exp_cos") return kernel_method(name, "exp_cos", 1, "(1 + (kr)^2/2)/(1 + (kr)^4/4)");
    throw UnknownMethod("unknown summation method '" + name + "'");
}

namespace detail {

inline std::size_t modes_needed(const SummationMethod& m, double param, std::size_t available) {
    m.check_param(param);
    if (m.param_kind == ParamKind::continuous_r) return available;
    const std::size_t last = m.last_mode(static_cast<std::size_t>(param));
    if (last > available)
        throw IndexError(m.name + ": n = " + std::to_string(static_cast<std::size_t>(param)) + " needs modes up to " +
                         std::to_string(last) + ", series has " + std::to_string(available));
    return last;
}

}  // namespace detail

inline double summed_partial(const TrigSeries& s, const SummationMethod& m, double param, double x) {
    const std::size_t n = detail::modes_needed(m, param, s.N());
    return detail::weighted_sum(s, n, x, [&](std::size_t k) { return m.factor(k, param); });
}

// Series given by a rule k ↦ (a_k, b_k), k ≥ 1, for sums the caller cannot truncate.
struct CoefficientRule {
    double a0 = 0;
    std::function<std::pair<double, double>(std::size_t)> ab;
    double l = std::numbers::pi;
};

inline constexpr std::size_t rule_max_terms = 1000000;

// Terms are summed until 64 consecutive k satisfy |factor|·max(|a_k|,|b_k|)·k < 1e-14.
inline double summed_partial(const CoefficientRule& rule, const SummationMethod& m, double param, double x) {
    m.check_param(param);
    const double w = std::numbers::pi / rule.l;
    double sum = 0.5 * rule.a0;
    int quiet = 0;
    for (std::size_t k = 1; k <= rule_max_terms && quiet < 64; ++k) {
        const double f = m.factor(k, param);
        const auto [a, b] = rule.ab(k);
        if (f != 0) sum += f * (a * std::cos(k * w * x) + b * std::sin(k * w * x));
        quiet = std::abs(f) * std::max(std::abs(a), std::abs(b)) * k < 1e-14 ? quiet + 1 : 0;
    }
    return sum;
}

struct GeneralizedSumResult {
    double value = 0;
    std::vector<double> schedule, estimates;
    bool converged = false;
    double residual = std::numeric_limits<double>::infinity();
};

// {0.2·2^-j} for continuous methods, {8·2^j} for discrete ones, j = 0..6.
inline std::vector<double> default_schedule(const SummationMethod& m) {
    std::vector<double> s;
    for (int j = 0; j <= 6; ++j) s.push_back(m.param_kind == ParamKind::continuous_r ? 0.2 * std::ldexp(1.0, -j) : 8.0 * (1 << j));
    return s;
}

namespace detail {

inline void check_schedule(const SummationMethod& m, const std::vector<double>& schedule) {
    if (schedule.size() < 3) throw DomainError("generalized_sum: schedule needs at least 3 entries");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        m.check_param(schedule[i]);
        if (i == 0) continue;
        const bool toward = m.param_kind == ParamKind::continuous_r ? schedule[i] < schedule[i - 1]
                                                                     : schedule[i] > schedule[i - 1];
        if (!toward) throw DomainError("generalized_sum: schedule must move monotonically toward the limit");
    }
}

template <class Eval>
GeneralizedSumResult run_schedule(const SummationMethod& m, const std::vector<double>& schedule, double tol,
                                  Eval&& eval) {
    check_schedule(m, schedule);
    GeneralizedSumResult res;
    res.schedule = schedule;
    res.estimates.assign(schedule.size(), 0.0);
    parallel_for(schedule.size(), [&](std::size_t i) { res.estimates[i] = eval(schedule[i]); });
    res.value = res.estimates.back();
    res.residual = std::abs(res.estimates.back() - res.estimates[res.estimates.size() - 2]);
    res.converged = res.residual < tol;
    return res;
}

}  // namespace detail

inline GeneralizedSumResult generalized_sum(const TrigSeries& s, const SummationMethod& m, double x,
                                            const std::vector<double>& schedule, double tol) {
    return detail::run_schedule(m, schedule, tol, [&](double p) { return summed_partial(s, m, p, x); });
}

inline GeneralizedSumResult generalized_sum(const CoefficientRule& rule, const SummationMethod& m, double x,
                                            const std::vector<double>& schedule, double tol) {
    return detail::run_schedule(m, schedule, tol, [&](double p) { return summed_partial(rule, m, p, x); });
}

struct SummedDerivative {
    double value = 0;
    bool smoothness_warning = false;  // deriv_order > p - 1 for the method's kernel
};

inline SummedDerivative summed_derivative(const TrigSeries& s, const SummationMethod& m, int deriv_order, double param,
                                          double x) {
    const TrigSeries d = differentiate_series(s, deriv_order);
    SummedDerivative out;
    out.value = summed_partial(d, m, param, x);
    out.smoothness_warning =
        m.smoothness_p != infinite_smoothness && deriv_order > m.smoothness_p - 1;
    return out;
}

inline double summed_double(const DoubleTrigSeries& s, const SummationMethod& m1, const SummationMethod& m2,
                            double param, double x, double y) {
    const std::size_t M = detail::modes_needed(m1, param, s.M);
    const std::size_t N = detail::modes_needed(m2, param, s.N);
    return detail::double_weighted_sum(
        s, M, N, x, y, [&](std::size_t k) { return m1.factor(k, param); },
        [&](std::size_t k) { return m2.factor(k, param); });
}

}  // namespace summa
