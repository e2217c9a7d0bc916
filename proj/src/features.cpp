#include "vibsel/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vibsel/linalg.hpp"
#include "vibsel/matrix.hpp"

namespace vibsel {

BasicStats basic_stats(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n < 4) throw std::invalid_argument("signal too short");
    for (double v : signal)
        if (!std::isfinite(v)) throw std::invalid_argument("invalid data");

    BasicStats st;
    double sum = 0.0, sum_sq = 0.0, peak = 0.0;
    for (double v : signal) {
        sum += v;
        sum_sq += v * v;
        peak = std::max(peak, std::abs(v));
    }
    const double dn = static_cast<double>(n);
    st.mean = sum / dn;
    st.rms = std::sqrt(sum_sq / dn);
    st.crest = st.rms == 0.0 ? 0.0 : peak / st.rms;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : signal) {
        const double d = v - st.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    st.variance = m2 * dn / (dn - 1.0);
    if (m2 > 1e-300) {
        st.skewness = m3 / std::pow(m2, 1.5);
        st.kurtosis = m4 / (m2 * m2);
    }
    return st;
}

namespace {

std::vector<double> remove_mean(std::span<const double> signal) {
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(signal.size());
    std::vector<double> x(signal.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = signal[i] - mean;
    return x;
}

constexpr double kReflectionCap = 1.0 - 1e-12;

// Burg recursion on a mean-removed signal; predictor-form coefficients.
std::vector<double> burg(const std::vector<double>& x, std::size_t p) {
    const std::size_t n = x.size();
    std::vector<double> f = x, b = x;
    std::vector<double> a(p, 0.0), prev(p, 0.0);
    for (std::size_t m = 1; m <= p; ++m) {
        double num = 0.0, den = 0.0;
        for (std::size_t t = m; t < n; ++t) {
            num += f[t] * b[t - 1];
            den += f[t] * f[t] + b[t - 1] * b[t - 1];
        }
        double k = den == 0.0 ? 0.0 : 2.0 * num / den;
        k = std::clamp(k, -kReflectionCap, kReflectionCap);

        std::copy(a.begin(), a.end(), prev.begin());
        a[m - 1] = k;
        for (std::size_t i = 0; i + 1 < m; ++i) a[i] = prev[i] - k * prev[m - 2 - i];

        for (std::size_t t = n - 1; t >= m; --t) {
            const double ft = f[t];
            f[t] = ft - k * b[t - 1];
            b[t] = b[t - 1] - k * ft;
        }
    }
    return a;
}

std::vector<double> ar_residuals(const std::vector<double>& x, const std::vector<double>& a) {
    const std::size_t order = a.size();
    std::vector<double> resid(x.size(), 0.0);
    for (std::size_t t = order; t < x.size(); ++t) {
        double pred = 0.0;
        for (std::size_t i = 0; i < order; ++i) pred += a[i] * x[t - 1 - i];
        resid[t] = x[t] - pred;
    }
    return resid;
}

// Least squares fit y ~ cols via ridge-damped normal equations. The ridge is
// proportional to the mean Gram diagonal, which keeps every coefficient
// invariant under rescaling of the signal.
std::vector<double> least_squares(const Matrix& cols, std::span<const double> y, double ridge_rel) {
    Matrix g(cols.cols(), cols.cols(), 0.0);
    std::vector<double> rhs(cols.cols(), 0.0);
    for (std::size_t r = 0; r < cols.rows(); ++r)
        for (std::size_t i = 0; i < cols.cols(); ++i) {
            for (std::size_t j = i; j < cols.cols(); ++j) g(i, j) += cols(r, i) * cols(r, j);
            rhs[i] += cols(r, i) * y[r];
        }
    for (std::size_t i = 0; i < cols.cols(); ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    double tr = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) tr += g(i, i);
    if (tr == 0.0) return std::vector<double>(cols.cols(), 0.0);  // all-zero regressors
    const double ridge = ridge_rel * tr / static_cast<double>(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += ridge;
    return solve_spd(SymMatrix(std::move(g)), rhs);
}

}  // namespace

std::vector<double> ar_coeffs(std::span<const double> signal, std::size_t p) {
    if (p == 0) throw std::invalid_argument("invalid order");
    if (signal.size() <= 2 * p) throw std::invalid_argument("signal too short");
    return burg(remove_mean(signal), p);
}

std::vector<double> ma_coeffs(std::span<const double> signal, std::size_t q) {
    if (q == 0) throw std::invalid_argument("invalid order");
    if (signal.size() <= 4 * q) throw std::invalid_argument("signal too short");
    const std::vector<double> x = remove_mean(signal);
    const std::size_t long_order = 4 * q;
    const std::vector<double> resid = ar_residuals(x, burg(x, long_order));

    const std::size_t start = long_order + q;
    const std::size_t rows = x.size() - start;
    Matrix cols(rows, q);
    std::vector<double> y(rows);
    for (std::size_t t = start; t < x.size(); ++t) {
        y[t - start] = x[t];
        for (std::size_t j = 0; j < q; ++j) cols(t - start, j) = resid[t - 1 - j];
    }
    // numerical damping only: the residual regressors are near-orthogonal
    return least_squares(cols, y, 1e-10);
}

std::vector<double> arma_coeffs(std::span<const double> signal, std::size_t p, std::size_t q) {
    if (p == 0 || q == 0) throw std::invalid_argument("invalid order");
    if (signal.size() <= 4 * (p + q)) throw std::invalid_argument("signal too short");
    const std::vector<double> x = remove_mean(signal);
    const std::size_t long_order = 2 * (p + q);
    const std::vector<double> resid = ar_residuals(x, burg(x, long_order));

    const std::size_t start = long_order + std::max(p, q);
    const std::size_t rows = x.size() - start;
    Matrix cols(rows, p + q);
    std::vector<double> y(rows);
    for (std::size_t t = start; t < x.size(); ++t) {
        y[t - start] = x[t];
        for (std::size_t i = 0; i < p; ++i) cols(t - start, i) = x[t - 1 - i];
        for (std::size_t j = 0; j < q; ++j) cols(t - start, p + j) = resid[t - 1 - j];
    }
    // A statistical ridge, not just numerical damping: when the signal has
    // little structure the lagged-signal and lagged-residual columns almost
    // coincide, and an unregularized solve drifts to large mutually
    // cancelling AR/MA pairs along that degeneracy. Shrinking toward zero
    // picks the smallest model among the near-equivalent fits.
    return least_squares(cols, y, 2e-2);
}

std::vector<double> feature_vector(std::span<const double> signal, const FeatureConfig& cfg) {
    if (signal.size() < 128) throw std::invalid_argument("signal too short");
    std::vector<double> out;
    out.reserve(cfg.total());
    for (double v : basic_stats(signal).as_array()) out.push_back(v);
    for (double v : ar_coeffs(signal, cfg.ar_order)) out.push_back(v);
    for (double v : ma_coeffs(signal, cfg.ma_order)) out.push_back(v);
    for (double v : arma_coeffs(signal, cfg.arma_p, cfg.arma_q)) out.push_back(v);
    return out;
}

}  // namespace vibsel
