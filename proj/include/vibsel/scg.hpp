// Scaled conjugate gradient minimizer over a flat parameter vector. Hessian
// products come from forward-differenced gradients; a scaling term lambda is
// adapted from the quadratic-fit comparison ratio so no line search is needed.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace vibsel {

struct ScgOptions {
    std::size_t max_iters = 100;
    double grad_tol = 1e-6;
    double step_tol = 1e-8;
    double sigma0 = 1e-4;
    double lambda0 = 1e-6;
};

enum class ScgStop { grad_tol, step_tol, max_iters };

struct ScgTrace {
    std::vector<double> errors;  // objective per iteration, nonincreasing
    std::size_t iterations = 0;
    ScgStop stop_reason = ScgStop::max_iters;
};

// Evaluates the objective at w, fills grad, returns the error.
using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

struct ScgResult {
    std::vector<double> w;
    ScgTrace trace;
};

ScgResult scg_minimize(const Objective& objective, std::vector<double> w0, const ScgOptions& opts = {});

}  // namespace vibsel
