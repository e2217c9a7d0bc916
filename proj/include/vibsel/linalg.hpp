// Dense symmetric linear algebra: covariance, Jacobi eigendecomposition and
// Cholesky solves for symmetric positive definite systems.
#pragma once

#include <span>
#include <vector>

#include "vibsel/matrix.hpp"

namespace vibsel {

// Symmetric matrix; construction checks symmetry to 1e-12 relative.
class SymMatrix {
public:
    explicit SymMatrix(Matrix m);

    std::size_t dim() const { return m_.rows(); }
    double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    const Matrix& matrix() const { return m_; }
    double trace() const;

private:
    Matrix m_;
};

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // orthonormal; column c pairs with values[c]
};

// Sample covariance of the rows of data, (N-1) denominator.
SymMatrix covariance(const Matrix& data);

// Full decomposition by cyclic Jacobi sweeps. Values sorted descending; each
// eigenvector is flipped so its largest-magnitude component (lowest index on
// ties) is positive.
EigenDecomposition sym_eig(const SymMatrix& m);

// Solve m x = rhs by Cholesky; if the factorization hits a nonpositive pivot
// the diagonal is damped by 1e-10 * trace / dim, once.
std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> rhs);

// Diagonal of m^-1 under the same factorization and damping rule.
std::vector<double> spd_inverse_diagonal(const SymMatrix& m);

}  // namespace vibsel
