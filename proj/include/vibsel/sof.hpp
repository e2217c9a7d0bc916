// Statistical overlap factor: per-index separation score between a healthy and
// a damaged population, and the top-k index ranking built from it.
#pragma once

#include <cstddef>
#include <vector>

#include "vibsel/matrix.hpp"

namespace vibsel {

struct DistributionStats {
    double mean = 0.0;
    double std = 0.0;  // (count-1) denominator when count >= 2, else 0
    std::size_t count = 0;
};

struct SofRanking {
    std::vector<double> scores;        // one per column
    std::vector<std::size_t> selected; // k indices, descending score, ties by index
};

DistributionStats column_stats(const Matrix& m, std::size_t col);

// |mean1 - mean2| / ((std1 + std2) / 2). Zero denominator gives +inf when the
// means differ and 0 when they are equal.
double sof_score(const DistributionStats& a, const DistributionStats& b);

SofRanking rank_by_sof(const Matrix& healthy, const Matrix& damaged, std::size_t k);

}  // namespace vibsel
