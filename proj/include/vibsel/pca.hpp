// Principal component reduction: fit the top-k eigenpairs of the input
// covariance and project data onto them.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vibsel/matrix.hpp"

namespace vibsel {

struct PcaModel {
    std::vector<double> means;        // training column means, length D
    Matrix components;                // D x k, orthonormal columns
    std::vector<double> eigenvalues;  // length k, descending
};

// k must satisfy 1 <= k <= min(N-1, D).
PcaModel fit_pca(const Matrix& data, std::size_t k);

// (data - means) * components; data must have D columns.
Matrix project(const PcaModel& model, const Matrix& data);

// Flat CSV model format: "#pca,D,k" header, then the means row (D values),
// the eigenvalue row (k values), and D component rows of k values each.
void save_pca(const PcaModel& model, const std::string& path);
PcaModel load_pca(const std::string& path);

}  // namespace vibsel
