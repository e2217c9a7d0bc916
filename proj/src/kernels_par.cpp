#include <cmath>
#include <cstdint>

#include "vibsel/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vibsel::kernels::par {

void covariance(const Matrix& centered, Matrix& cov) {
    const std::int64_t n = static_cast<std::int64_t>(centered.rows());
    const std::int64_t d = static_cast<std::int64_t>(centered.cols());
    cov = Matrix(d, d, 0.0);
    const double denom = static_cast<double>(n - 1);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < d; ++i) {
        for (std::int64_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::int64_t r = 0; r < n; ++r) s += centered(r, i) * centered(r, j);
            cov(i, j) = s / denom;
        }
    }
    for (std::int64_t i = 0; i < d; ++i)
        for (std::int64_t j = 0; j < i; ++j) cov(i, j) = cov(j, i);
}

void gram(const Matrix& j, Matrix& out) {
    const std::int64_t n = static_cast<std::int64_t>(j.rows());
    const std::int64_t p = static_cast<std::int64_t>(j.cols());
    out = Matrix(p, p, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t b = a; b < p; ++b) {
            double s = 0.0;
            for (std::int64_t r = 0; r < n; ++r) s += j(r, a) * j(r, b);
            out(a, b) = s;
        }
    }
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < a; ++b) out(a, b) = out(b, a);
}

bool cholesky(Matrix& a) {
    // Left-looking: after the pivot of column j is fixed, the entries below it
    // are independent of one another.
    const std::int64_t n = static_cast<std::int64_t>(a.rows());
    bool ok = true;
    for (std::int64_t j = 0; j < n && ok; ++j) {
        double d = a(j, j);
        for (std::int64_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) {
            ok = false;
            break;
        }
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
#pragma omp parallel for schedule(static) if (n - j > 64)
        for (std::int64_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::int64_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
        for (std::int64_t k = j + 1; k < n; ++k) a(j, k) = 0.0;
    }
    return ok;
}

std::vector<double> inverse_diagonal(const Matrix& chol) {
    const std::int64_t n = static_cast<std::int64_t>(chol.rows());
    std::vector<double> diag(n, 0.0);
#pragma omp parallel
    {
        std::vector<double> col(n);
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t k = i; k < n; ++k) {
                double s = (k == i) ? 1.0 : 0.0;
                for (std::int64_t m = i; m < k; ++m) s -= chol(k, m) * col[m];
                col[k] = s / chol(k, k);
            }
            double acc = 0.0;
            for (std::int64_t k = i; k < n; ++k) acc += col[k] * col[k];
            diag[i] = acc;
        }
    }
    return diag;
}

}  // namespace vibsel::kernels::par
