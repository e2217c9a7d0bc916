#include "vibsel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vibsel/kernels.hpp"

namespace vibsel {

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) throw std::invalid_argument("not symmetric");
    if (!m_.all_finite()) throw std::invalid_argument("invalid data");
    double scale = 0.0;
    for (std::size_t i = 0; i < m_.rows(); ++i) scale = std::max(scale, max_abs(m_.row(i)));
    const double tol = 1e-12 * std::max(scale, 1e-300);
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i + 1; j < m_.cols(); ++j)
            if (std::abs(m_(i, j) - m_(j, i)) > tol) throw std::invalid_argument("not symmetric");
    // force exact symmetry so downstream rotations stay clean
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i + 1; j < m_.cols(); ++j) m_(j, i) = m_(i, j);
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
    return t;
}

SymMatrix covariance(const Matrix& data) {
    if (data.rows() < 2) throw std::invalid_argument("insufficient samples");
    if (!data.all_finite()) throw std::invalid_argument("invalid data");
    const std::vector<double> means = column_means(data);
    Matrix centered(data.rows(), data.cols());
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < data.cols(); ++c) centered(r, c) = data(r, c) - means[c];
    Matrix cov;
    kernels::par::covariance(centered, cov);
    return SymMatrix(std::move(cov));
}

namespace {

double off_diagonal_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return 2.0 * s;
}

double frobenius_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = 0; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return s;
}

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& m) {
    const std::size_t n = m.dim();
    Matrix a = m.matrix();
    Matrix v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double norm_sq = frobenius_sq(a);
    const double thresh = 1e-24 * norm_sq;  // (1e-12 * ||A||_F)^2
    constexpr int kMaxSweeps = 100;

    bool converged = norm_sq == 0.0 || off_diagonal_sq(a) <= thresh;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = arp - s * (arq + tau * arp);
                        a(p, r) = a(r, p);
                        a(r, q) = arq + s * (arp - tau * arq);
                        a(q, r) = a(r, q);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        converged = off_diagonal_sq(a) <= thresh;
    }
    if (!converged) throw std::runtime_error("eig divergence");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.values[c] = a(src, src);
        // sign convention: largest-magnitude component positive, lowest index on ties
        std::size_t lead = 0;
        double lead_abs = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double mag = std::abs(v(r, src));
            if (mag > lead_abs) {  // strict, so ties keep the lowest index
                lead_abs = mag;
                lead = r;
            }
        }
        const double flip = v(lead, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = flip * v(r, src);
    }
    return out;
}

namespace {

// Cholesky with the one-shot damping rule shared by solve_spd and the
// inverse-diagonal path.
Matrix damped_cholesky(const SymMatrix& m) {
    Matrix a = m.matrix();
    if (kernels::par::cholesky(a)) return a;
    const double damp = 1e-10 * m.trace() / static_cast<double>(m.dim());
    a = m.matrix();
    for (std::size_t i = 0; i < m.dim(); ++i) a(i, i) += damp;
    if (!kernels::par::cholesky(a)) throw std::runtime_error("not positive definite");
    return a;
}

}  // namespace

std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> rhs) {
    if (rhs.size() != m.dim()) throw std::invalid_argument("dimension mismatch");
    const Matrix l = damped_cholesky(m);
    const std::size_t n = m.dim();
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

std::vector<double> spd_inverse_diagonal(const SymMatrix& m) {
    const Matrix l = damped_cholesky(m);
    return kernels::par::inverse_diagonal(l);
}

}  // namespace vibsel
