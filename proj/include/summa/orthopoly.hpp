#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "summa/errors.hpp"
#include "summa/quadrature.hpp"

namespace summa {

inline double legendre(int n, double x) {
    if (n < 0) throw DomainError("legendre: negative degree");
    if (n == 0) return 1;
    double p0 = 1, p1 = x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// P'_{k+1} = P'_{k-1} + (2k+1) P_k
inline double legendre_derivative(int n, double x) {
    if (n < 0) throw DomainError("legendre_derivative: negative degree");
    if (n == 0) return 0;
    double p_prev = 1, p = x;  // P_{k-1}, P_k
    double d_prev = 0, d = 1;  // P'_{k-1}, P'_k
    for (int k = 1; k < n; ++k) {
        const double d_next = d_prev + (2 * k + 1) * p;
        const double p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1);
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return d;
}

inline double legendre_norm_sq(int n) {
    if (n < 0) throw DomainError("legendre_norm_sq: negative degree");
    return 2.0 / (2 * n + 1);
}

// Largest degree whose monomial coefficients are computed from exact 64-bit binomials.
inline constexpr int legendre_coefficients_max_degree = 33;

namespace detail {

inline std::uint64_t binomial_checked(int n, int k) {
    if (k < 0 || k > n) return 0;
    // Pascal row by row; any overflow of an entry we need is reported.
    std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = std::min(i, k); j >= 1; --j) {
            if (row[j] > std::numeric_limits<std::uint64_t>::max() - row[j - 1])
                throw Overflow("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 64 bits");
            row[j] += row[j - 1];
        }
    return row[k];
}

}  // namespace detail

// Monomial coefficients of P_n, lowest degree first:
// P_n = 2^-n Σ_k (-1)^k C(n,k) C(2n-2k, n) x^{n-2k}.
inline std::vector<double> legendre_coefficients(int n) {
    if (n < 0) throw DomainError("legendre_coefficients: negative degree");
    if (n > legendre_coefficients_max_degree)
        throw Overflow("legendre_coefficients: degree " + std::to_string(n) + " exceeds " +
                       std::to_string(legendre_coefficients_max_degree));
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    const double scale = std::ldexp(1.0, -n);
    for (int k = 0; 2 * k <= n; ++k) {
        const double term = static_cast<double>(detail::binomial_checked(n, k)) *
                            static_cast<double>(detail::binomial_checked(2 * n - 2 * k, n)) * scale;
        c[n - 2 * k] = (k % 2 ? -term : term);
    }
    return c;
}

// P_n^k(x) = (1-x^2)^{k/2} d^k/dx^k P_n(x), no Condon-Shortley phase.
inline double associated_legendre(int n, int k, double x) {
    if (n < 0 || k < 0 || k > n) throw DomainError("associated_legendre: need 0 <= k <= n");
    if (std::abs(x) > 1) throw DomainError("associated_legendre: |x| > 1");
    // Column j holds d^j P_i for i = 0..n; differentiate the three-term recurrence:
    // (i+1) D^j P_{i+1} = (2i+1)(x D^j P_i + j D^{j-1} P_i) - i D^j P_{i-1}
    std::vector<double> lower(static_cast<std::size_t>(n) + 1), cur(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) lower[i] = legendre(i, x);
    for (int j = 1; j <= k; ++j) {
        std::fill(cur.begin(), cur.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double prev = i > 0 ? cur[i - 1] : 0.0;
            cur[i + 1] = ((2 * i + 1) * (x * cur[i] + j * lower[i]) - i * prev) / (i + 1);
        }
        std::swap(lower, cur);
    }
    return std::pow(1 - x * x, 0.5 * k) * lower[n];
}

enum class ChebyshevKind { first, second };

inline double chebyshev(ChebyshevKind kind, int n, double x) {
    if (n < 0) throw DomainError("chebyshev: negative degree");
    double t0 = 1, t1 = kind == ChebyshevKind::first ? x : 2 * x;
    if (n == 0) return t0;
    for (int k = 1; k < n; ++k) {
        const double t2 = 2 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

// How weighted integrals over the family's interval are evaluated.
enum class WeightSubstitution {
    none,
    // x = cos θ on [-1, 1]; used for weights (1-x^2)^{±1/2} so the endpoint
    // singularity cancels against the Jacobian.
    cosine_first,   // weight (1-x^2)^{-1/2}: ∫ g h dx = ∫_0^π g(cos θ) dθ
    cosine_second,  // weight (1-x^2)^{1/2}:  ∫ g h dx = ∫_0^π g(cos θ) sin^2 θ dθ
};

struct OrthoFamily {
    std::string name;
    double a = -1, b = 1;
    std::function<double(double)> weight;
    std::function<double(int)> norm_sq;
    std::function<double(int, double)> eval;
    WeightSubstitution substitution = WeightSubstitution::none;
    // Optional: values φ_0..φ_N at x in one pass.
    std::function<void(int, double, double*)> eval_all;
};

// ∫_a^b g(x) h(x) dx for the family's weight h.
template <class G>
double weighted_integral(const OrthoFamily& fam, G&& g, const QuadConfig& cfg = {}) {
    switch (fam.substitution) {
        case WeightSubstitution::cosine_first:
            return integrate([&](double th) { return g(std::cos(th)); }, 0.0, std::numbers::pi, cfg);
        case WeightSubstitution::cosine_second:
            return integrate(
                [&](double th) {
                    const double s = std::sin(th);
                    return g(std::cos(th)) * s * s;
                },
                0.0, std::numbers::pi, cfg);
        case WeightSubstitution::none: break;
    }
    return integrate([&](double x) { return g(x) * fam.weight(x); }, fam.a, fam.b, cfg);
}

inline OrthoFamily legendre_family() {
    OrthoFamily f;
    f.name = "legendre";
    f.weight = [](double) { return 1.0; };
    f.norm_sq = legendre_norm_sq;
    f.eval = legendre;
    f.eval_all = [](int n, double x, double* out) {
        out[0] = 1;
        if (n >= 1) out[1] = x;
        for (int k = 1; k < n; ++k) out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1);
    };
    return f;
}

inline OrthoFamily chebyshev_family(ChebyshevKind kind) {
    OrthoFamily f;
    const bool first = kind == ChebyshevKind::first;
    f.name = first ? "chebyshev_t" : "chebyshev_u";
    if (first) {
        f.weight = [](double x) { return 1 / std::sqrt(1 - x * x); };
        f.norm_sq = [](int n) { return n == 0 ? std::numbers::pi : std::numbers::pi / 2; };
        f.substitution = WeightSubstitution::cosine_first;
    } else {
        f.weight = [](double x) { return std::sqrt(1 - x * x); };
        f.norm_sq = [](int) { return std::numbers::pi / 2; };
        f.substitution = WeightSubstitution::cosine_second;
    }
    f.eval = [kind](int n, double x) { return chebyshev(kind, n, x); };
    f.eval_all = [first](int n, double x, double* out) {
        out[0] = 1;
        if (n >= 1) out[1] = first ? x : 2 * x;
        for (int k = 1; k < n; ++k) out[k + 1] = 2 * x * out[k] - out[k - 1];
    };
    return f;
}

// Family {P_{k+j}^k}_{j>=0}, orthogonal with unit weight on [-1, 1].
inline OrthoFamily associated_legendre_family(int k) {
    if (k < 0) throw DomainError("associated_legendre_family: negative order");
    OrthoFamily f;
    f.name = "associated_legendre_" + std::to_string(k);
    f.weight = [](double) { return 1.0; };
    f.norm_sq = [k](int j) {
        const int n = j + k;
        double ratio = 1;  // (n+k)!/(n-k)!
        for (int i = n - k + 1; i <= n + k; ++i) ratio *= i;
        return 2.0 / (2 * n + 1) * ratio;
    };
    f.eval = [k](int j, double x) { return associated_legendre(j + k, k, x); };
    return f;
}

struct ExpansionCoeffs {
    OrthoFamily family;
    std::vector<double> c;
};

template <class F>
ExpansionCoeffs expand(F&& f, const OrthoFamily& family, int N, const QuadConfig& cfg = {}) {
    if (N < 0) throw DomainError("expand: negative N");
    ExpansionCoeffs out{family, std::vector<double>(static_cast<std::size_t>(N) + 1)};
    for (int n = 0; n <= N; ++n)
        out.c[n] = weighted_integral(family, [&](double x) { return f(x) * family.eval(n, x); }, cfg) /
                   family.norm_sq(n);
    return out;
}

inline double eval_series(const ExpansionCoeffs& s, double x) {
    if (s.c.empty()) return 0;
    const int N = static_cast<int>(s.c.size()) - 1;
    double sum = 0;
    if (s.family.eval_all) {
        std::vector<double> phi(static_cast<std::size_t>(N) + 1);
        s.family.eval_all(N, x, phi.data());
        for (int k = N; k >= 0; --k) sum += s.c[k] * phi[k];
    } else {
        for (int k = N; k >= 0; --k) sum += s.c[k] * s.family.eval(k, x);
    }
    return sum;
}

// Σ c_k^2 ‖φ_k‖^2, bounded above by ∫ f^2 h.
inline double bessel_sum(const ExpansionCoeffs& s) {
    double sum = 0;
    for (std::size_t k = 0; k < s.c.size(); ++k) sum += s.c[k] * s.c[k] * s.family.norm_sq(static_cast<int>(k));
    return sum;
}

// Largest |∫φ_mφ_n h| (m≠n) and largest |∫φ_n^2 h - norm_sq(n)| over m, n ≤ nmax.
struct FamilyCheck {
    double max_off_diagonal = 0;
    double max_norm_residual = 0;
};

inline FamilyCheck validate_family(const OrthoFamily& fam, int nmax, const QuadConfig& cfg = {}) {
    FamilyCheck r;
    for (int m = 0; m <= nmax; ++m)
        for (int n = m; n <= nmax; ++n) {
            const double v = weighted_integral(fam, [&](double x) { return fam.eval(m, x) * fam.eval(n, x); }, cfg);
            if (m == n)
                r.max_norm_residual = std::max(r.max_norm_residual, std::abs(v - fam.norm_sq(n)));
            else
                r.max_off_diagonal = std::max(r.max_off_diagonal, std::abs(v));
        }
    return r;
}

// Σ_j coef[j] basis[j](x): one output of gram_schmidt.
class LinearCombination {
public:
    LinearCombination(std::shared_ptr<const std::vector<std::function<double(double)>>> basis,
                      std::vector<double> coef)
        : basis_(std::move(basis)), coef_(std::move(coef)) {}

    double operator()(double x) const {
        double s = 0;
        for (std::size_t j = 0; j < coef_.size(); ++j)
            if (coef_[j] != 0) s += coef_[j] * (*basis_)[j](x);
        return s;
    }
    const std::vector<double>& coefficients() const { return coef_; }

private:
    std::shared_ptr<const std::vector<std::function<double(double)>>> basis_;
    std::vector<double> coef_;
};

// Orthonormalise fns in L2([a,b], weight). Output i is a combination of
// fns[0..i] whose coefficient on fns[i] is positive. Each vector is
// orthogonalised twice against the previous outputs.
inline std::vector<LinearCombination> gram_schmidt(std::vector<std::function<double(double)>> fns, double a,
                                                   double b, std::function<double(double)> weight,
                                                   const QuadConfig& cfg = {},
                                                   WeightSubstitution substitution = WeightSubstitution::none) {
    auto basis = std::make_shared<const std::vector<std::function<double(double)>>>(std::move(fns));
    const std::size_t n = basis->size();
    OrthoFamily space;
    space.a = a;
    space.b = b;
    space.weight = std::move(weight);
    space.substitution = substitution;
    auto dot = [&](const LinearCombination& u, const LinearCombination& v) {
        return weighted_integral(space, [&](double x) { return u(x) * v(x); }, cfg);
    };
    std::vector<LinearCombination> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> coef(i + 1, 0.0);
        coef[i] = 1;
        const double input_norm = std::sqrt(dot(LinearCombination(basis, coef), LinearCombination(basis, coef)));
        if (!(input_norm > 0)) throw DegenerateInput("gram_schmidt: input " + std::to_string(i) + " has zero norm");
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                const double p = dot(LinearCombination(basis, coef), out[j]);
                const auto& e = out[j].coefficients();
                for (std::size_t q = 0; q < e.size(); ++q) coef[q] -= p * e[q];
            }
        }
        const double norm = std::sqrt(std::max(0.0, dot(LinearCombination(basis, coef), LinearCombination(basis, coef))));
        if (norm < 1e-12 * input_norm)
            throw DegenerateInput("gram_schmidt: input " + std::to_string(i) + " is numerically dependent");
        for (auto& c : coef) c /= norm;
        out.emplace_back(basis, std::move(coef));
    }
    return out;
}

}  // namespace summa
