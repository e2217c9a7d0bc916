#include "vibsel/sof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vibsel {

DistributionStats column_stats(const Matrix& m, std::size_t col) {
    DistributionStats st;
    st.count = m.rows();
    if (st.count == 0) throw std::invalid_argument("invalid stats");
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, col);
    st.mean = sum / static_cast<double>(st.count);
    if (st.count >= 2) {
        double ss = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const double d = m(r, col) - st.mean;
            ss += d * d;
        }
        st.std = std::sqrt(ss / static_cast<double>(st.count - 1));
    }
    return st;
}

double sof_score(const DistributionStats& a, const DistributionStats& b) {
    if (std::isnan(a.mean) || std::isnan(b.mean) || std::isnan(a.std) || std::isnan(b.std))
        throw std::invalid_argument("invalid stats");
    const double num = std::abs(a.mean - b.mean);
    const double denom = (a.std + b.std) / 2.0;
    if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / denom;
}

SofRanking rank_by_sof(const Matrix& healthy, const Matrix& damaged, std::size_t k) {
    if (healthy.cols() != damaged.cols()) throw std::invalid_argument("dimension mismatch");
    if (k > healthy.cols()) throw std::invalid_argument("k exceeds dimension");
    if (healthy.rows() < 2 || damaged.rows() < 2) throw std::invalid_argument("insufficient samples");

    const std::size_t d = healthy.cols();
    SofRanking out;
    out.scores.resize(d);
    for (std::size_t c = 0; c < d; ++c)
        out.scores[c] = sof_score(column_stats(healthy, c), column_stats(damaged, c));

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return out.scores[i] > out.scores[j];  // stable keeps index order on ties
    });
    out.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

}  // namespace vibsel
