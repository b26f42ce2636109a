#pragma once

// Five-point finite-difference solve of Δu + θ²u = -F on [0, l1] x [0, l2]
// with u = 0 on the boundary. Returns the full n x n node grid (boundary
// included), row-major in x.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fd {

struct Grid {
    std::size_t n = 0;
    double hx = 0, hy = 0;
    std::vector<double> u;
    double at(std::size_t i, std::size_t j) const { return u[i * n + j]; }
};

inline Grid helmholtz(double l1, double l2, double theta, const std::function<double(double, double)>& F,
                      std::size_t n) {
    const std::size_t m = n - 2;  // interior nodes per side
    const double hx = l1 / (n - 1), hy = l2 / (n - 1);
    const double cx = 1 / (hx * hx), cy = 1 / (hy * hy);
    // Unknown (i, j) -> i*m + j. The matrix has bandwidth m on each side of the diagonal.
    const std::size_t N = m * m, bw = m;
    std::vector<double> band(N * (2 * bw + 1), 0.0), rhs(N);
    auto A = [&](std::size_t row, std::size_t col) -> double& { return band[row * (2 * bw + 1) + (col + bw - row)]; };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t row = i * m + j;
            // Negated so the matrix is positive definite below resonance.
            A(row, row) = 2 * cx + 2 * cy - theta * theta;
            if (i > 0) A(row, row - m) = -cx;
            if (i + 1 < m) A(row, row + m) = -cx;
            if (j > 0) A(row, row - 1) = -cy;
            if (j + 1 < m) A(row, row + 1) = -cy;
            rhs[row] = F((i + 1) * hx, (j + 1) * hy);
        }
    for (std::size_t k = 0; k < N; ++k) {
        const double piv = A(k, k);
        if (!(std::abs(piv) > 0)) throw std::runtime_error("fd: zero pivot");
        const std::size_t last = std::min(N - 1, k + bw);
        for (std::size_t r = k + 1; r <= last; ++r) {
            const double f = A(r, k) / piv;
            if (f == 0) continue;
            for (std::size_t c = k; c <= last; ++c) A(r, c) -= f * A(k, c);
            rhs[r] -= f * rhs[k];
        }
    }
    std::vector<double> x(N);
    for (std::size_t k = N; k-- > 0;) {
        double s = rhs[k];
        const std::size_t last = std::min(N - 1, k + bw);
        for (std::size_t c = k + 1; c <= last; ++c) s -= A(k, c) * x[c];
        x[k] = s / A(k, k);
    }
    Grid g{n, hx, hy, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g.u[(i + 1) * n + (j + 1)] = x[i * m + j];
    return g;
}

}  // namespace fd
