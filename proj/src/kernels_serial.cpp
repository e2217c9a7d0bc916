#include <cmath>

#include "vibsel/kernels.hpp"

namespace vibsel::kernels::serial {

void covariance(const Matrix& centered, Matrix& cov) {
    const std::size_t n = centered.rows(), d = centered.cols();
    cov = Matrix(d, d, 0.0);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += centered(r, i) * centered(r, j);
            cov(i, j) = s / denom;
            cov(j, i) = cov(i, j);
        }
    }
}

void gram(const Matrix& j, Matrix& out) {
    const std::size_t n = j.rows(), p = j.cols();
    out = Matrix(p, p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += j(r, a) * j(r, b);
            out(a, b) = s;
            out(b, a) = s;
        }
    }
}

bool cholesky(Matrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
        for (std::size_t k = j + 1; k < n; ++k) a(j, k) = 0.0;
    }
    return true;
}

std::vector<double> inverse_diagonal(const Matrix& chol) {
    // a^-1 = L^-T L^-1, so (a^-1)_ii is the squared norm of column i of L^-1,
    // obtained by one forward substitution per column.
    const std::size_t n = chol.rows();
    std::vector<double> diag(n, 0.0);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i; k < n; ++k) {
            double s = (k == i) ? 1.0 : 0.0;
            for (std::size_t m = i; m < k; ++m) s -= chol(k, m) * col[m];
            col[k] = s / chol(k, k);
        }
        double acc = 0.0;
        for (std::size_t k = i; k < n; ++k) acc += col[k] * col[k];
        diag[i] = acc;
    }
    return diag;
}

}  // namespace vibsel::kernels::serial
