#include "vibsel/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace vibsel {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.data() + r * m.cols());
    }
    return m;
}

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> column_means(const Matrix& m) {
    std::vector<double> means(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) means[c] += m(r, c);
    for (double& v : means) v /= static_cast<double>(m.rows());
    return means;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
    Matrix out(a.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Matrix select_columns(const Matrix& m, std::span<const std::size_t> order, std::size_t k) {
    if (k > order.size()) throw std::invalid_argument("k exceeds dimension");
    Matrix out(m.rows(), k);
    for (std::size_t j = 0; j < k; ++j) {
        if (order[j] >= m.cols()) throw std::invalid_argument("k exceeds dimension");
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, j) = m(r, order[j]);
    }
    return out;
}

}  // namespace vibsel
