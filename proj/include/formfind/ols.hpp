#pragma once

#include <cmath>
#include <vector>

#include "formfind/errors.hpp"

namespace formfind {

// Dense ordinary least squares for a handful of regressors.
// Solves min ||A x - y|| through the normal equations; the condition number
// of A^T A is computed with cyclic Jacobi (the matrices here are tiny).

namespace detail {

// Eigenvalues of a symmetric matrix, ascending. In-place Jacobi sweeps.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> m, std::size_t k) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * k + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < k; ++i) {
                    const double mip = at(i, p), miq = at(i, q);
                    at(i, p) = c * mip - s * miq;
                    at(i, q) = s * mip + c * miq;
                }
                for (std::size_t i = 0; i < k; ++i) {
                    const double mpi = at(p, i), mqi = at(q, i);
                    at(p, i) = c * mpi - s * mqi;
                    at(q, i) = s * mpi + c * mqi;
                }
            }
        }
    }
    std::vector<double> ev(k);
    for (std::size_t i = 0; i < k; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace detail

struct OlsResult {
    std::vector<double> coefficients;
    double r_squared = 0.0;
    double condition = 0.0;  // of the normal-equations matrix
};

// columns: k regressor vectors of length n (caller prepends an intercept
// column if wanted). Throws IllConditioned when cond(A^T A) > cond_limit.
inline OlsResult ols(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
                     double cond_limit = 1e10) {
    const std::size_t k = columns.size();
    const std::size_t n = y.size();
    if (k == 0) throw UsageError("ols needs at least one regressor");
    for (const auto& c : columns)
        if (c.size() != n) throw LengthMismatch("ols regressor length mismatch");

    std::vector<double> g(k * k, 0.0), b(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += columns[i][r] * columns[j][r];
            g[i * k + j] = g[j * k + i] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += columns[i][r] * y[r];
        b[i] = s;
    }

    auto ev = detail::symmetric_eigenvalues(g, k);
    const double lo = ev.front(), hi = ev.back();
    const double cond = (lo <= 0.0) ? std::numeric_limits<double>::infinity() : hi / lo;
    if (!(cond <= cond_limit)) throw IllConditioned(cond);

    // Cholesky solve of G x = b.
    std::vector<double> L(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = g[i * k + j];
            for (std::size_t m = 0; m < j; ++m) s -= L[i * k + m] * L[j * k + m];
            if (i == j) {
                if (s <= 0.0) throw IllConditioned(cond);
                L[i * k + i] = std::sqrt(s);
            } else {
                L[i * k + j] = s / L[j * k + j];
            }
        }
    }
    std::vector<double> z(k), x(k);
    for (std::size_t i = 0; i < k; ++i) {
        double s = b[i];
        for (std::size_t m = 0; m < i; ++m) s -= L[i * k + m] * z[m];
        z[i] = s / L[i * k + i];
    }
    for (std::size_t ii = k; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t m = ii + 1; m < k; ++m) s -= L[m * k + ii] * x[m];
        x[ii] = s / L[ii * k + ii];
    }

    double ymean = 0.0;
    for (double v : y) ymean += v;
    ymean /= static_cast<double>(n);
    double sse = 0.0, sst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double pred = 0.0;
        for (std::size_t i = 0; i < k; ++i) pred += x[i] * columns[i][r];
        sse += (y[r] - pred) * (y[r] - pred);
        sst += (y[r] - ymean) * (y[r] - ymean);
    }
    OlsResult out;
    out.coefficients = std::move(x);
    out.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    out.condition = cond;
    return out;
}

}  // namespace formfind
