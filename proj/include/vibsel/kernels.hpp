// Hot numeric kernels, each in two builds: a plain serial reference that the
// tests treat as ground truth, and an OpenMP variant used by the library.
// The OpenMP variants assign every output entry to exactly one task and keep
// the inner accumulation order fixed, so their results do not depend on the
// thread count.
#pragma once

#include <vector>

#include "vibsel/matrix.hpp"

namespace vibsel::kernels {

namespace serial {

// cov = centeredT * centered / (n - 1); centered is n x d, cov d x d
void covariance(const Matrix& centered, Matrix& cov);

// out = jT * j for an n x p matrix
void gram(const Matrix& j, Matrix& out);

// in-place lower Cholesky; false on a nonpositive pivot
bool cholesky(Matrix& a);

// diagonal of a^-1 given the lower Cholesky factor of a
std::vector<double> inverse_diagonal(const Matrix& chol);

}  // namespace serial

namespace par {

void covariance(const Matrix& centered, Matrix& cov);
void gram(const Matrix& j, Matrix& out);
bool cholesky(Matrix& a);
std::vector<double> inverse_diagonal(const Matrix& chol);

}  // namespace par

}  // namespace vibsel::kernels
